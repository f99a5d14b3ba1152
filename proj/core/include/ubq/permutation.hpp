#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace ubq {

/// Bijection on {0, ..., K-1}, stored as an index vector. pi[i] = m means
/// row i of the labeled data lands in row m of the shuffled data, so
/// applying it to v gives out[pi[i]] = v[i].
class Permutation {
public:
    static Permutation identity(std::size_t k);

    std::size_t size() const noexcept { return pi_.size(); }
    std::size_t operator[](std::size_t i) const noexcept { return pi_[i]; }
    std::span<const std::size_t> indices() const noexcept { return pi_; }
    bool is_identity() const noexcept;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    friend Permutation make_permutation(std::vector<std::size_t> pi);
    explicit Permutation(std::vector<std::size_t> pi) noexcept : pi_(std::move(pi)) {}

    std::vector<std::size_t> pi_;
};

/// Validates pi as a bijection; throws NotABijection otherwise.
Permutation make_permutation(std::vector<std::size_t> pi);

Permutation inverse(const Permutation& p);

/// The permutation that applies q first and then p.
Permutation compose(const Permutation& p, const Permutation& q);

/// out[p[i]] = v[i].
std::vector<double> apply_permutation(const Permutation& p, std::span<const double> v);

/// Inverse application, out[i] = v[p[i]]; equals apply_permutation(inverse(p), v).
std::vector<double> apply_inverse(const Permutation& p, std::span<const double> v);

/// Stable descending argsort: result[0] is the index of the largest key.
/// Equal keys keep ascending index order. Throws InvalidKey on NaN.
Permutation sorting_permutation(std::span<const double> keys);

/// The permutation p such that apply_inverse(p, values) has the same
/// relative (descending, stable) order as keys: the r-th largest value is
/// assigned to the index holding the r-th largest key.
Permutation order_matching(std::span<const double> keys, std::span<const double> values);

/// Uniformly random permutation of size k.
template <class Engine>
Permutation random_permutation(std::size_t k, Engine& engine) {
    std::vector<std::size_t> pi(k);
    for (std::size_t i = 0; i < k; ++i) pi[i] = i;
    for (std::size_t i = k; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(pi[i - 1], pi[pick(engine)]);
    }
    return make_permutation(std::move(pi));
}

}  // namespace ubq

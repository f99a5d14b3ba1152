#include "ubq/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ubq/error.hpp"

namespace ubq {

Permutation Permutation::identity(std::size_t k) {
    std::vector<std::size_t> pi(k);
    std::iota(pi.begin(), pi.end(), std::size_t{0});
    return Permutation(std::move(pi));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < pi_.size(); ++i)
        if (pi_[i] != i) return false;
    return true;
}

Permutation make_permutation(std::vector<std::size_t> pi) {
    if (pi.empty()) fail(ErrorCode::NotABijection, "permutation must have at least one entry");
    std::vector<bool> seen(pi.size(), false);
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const std::size_t m = pi[i];
        if (m >= pi.size() || seen[m])
            fail(ErrorCode::NotABijection, "index " + std::to_string(m) + " at position " + std::to_string(i) +
                                               " is out of range or repeated");
        seen[m] = true;
    }
    return Permutation(std::move(pi));
}

Permutation inverse(const Permutation& p) {
    std::vector<std::size_t> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return make_permutation(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) fail(ErrorCode::LengthMismatch, "composed permutations differ in size");
    std::vector<std::size_t> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return make_permutation(std::move(r));
}

std::vector<double> apply_permutation(const Permutation& p, std::span<const double> v) {
    if (v.size() != p.size())
        fail(ErrorCode::LengthMismatch, "vector of length " + std::to_string(v.size()) +
                                            " with permutation of size " + std::to_string(p.size()));
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[p[i]] = v[i];
    return out;
}

std::vector<double> apply_inverse(const Permutation& p, std::span<const double> v) {
    if (v.size() != p.size())
        fail(ErrorCode::LengthMismatch, "vector of length " + std::to_string(v.size()) +
                                            " with permutation of size " + std::to_string(p.size()));
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[p[i]];
    return out;
}

Permutation sorting_permutation(std::span<const double> keys) {
    for (double k : keys)
        if (std::isnan(k)) fail(ErrorCode::InvalidKey, "NaN sort key");
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
    return make_permutation(std::move(order));
}

Permutation order_matching(std::span<const double> keys, std::span<const double> values) {
    if (keys.size() != values.size()) fail(ErrorCode::LengthMismatch, "keys and values differ in length");
    const Permutation by_key = sorting_permutation(keys);
    const Permutation by_value = sorting_permutation(values);
    std::vector<std::size_t> pi(keys.size());
    for (std::size_t r = 0; r < keys.size(); ++r) pi[by_key[r]] = by_value[r];
    return make_permutation(std::move(pi));
}

}  // namespace ubq

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hodgetau {

/// Permutation of {0,...,d-1}, stored as the image array.
/// Composition convention throughout the project: (p*q)(x) = p(q(x)).
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size(), 0);
        for (int v : images_) {
            if (v < 0 || v >= int(images_.size()) || seen[v])
                throw std::invalid_argument("Permutation: image array is not a bijection");
            seen[v] = 1;
        }
    }

    static Permutation identity(int d) {
        std::vector<int> im(d);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    /// Builds a permutation from disjoint cycles, e.g. {{0,1},{2,3}} on d points.
    static Permutation from_cycles(int d, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> im(d);
        std::iota(im.begin(), im.end(), 0);
        for (const auto& c : cycles)
            for (size_t i = 0; i < c.size(); ++i)
                im[c[i]] = c[(i + 1) % c.size()];
        return Permutation(std::move(im));
    }

    int degree() const { return int(images_.size()); }
    int operator()(int x) const { return images_[x]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> im(images_.size());
        for (int i = 0; i < degree(); ++i) im[images_[i]] = i;
        return Permutation(std::move(im));
    }

    friend Permutation operator*(const Permutation& p, const Permutation& q) {
        if (p.degree() != q.degree())
            throw std::invalid_argument("Permutation: degree mismatch");
        std::vector<int> im(p.degree());
        for (int i = 0; i < p.degree(); ++i) im[i] = p.images_[q.images_[i]];
        return Permutation(std::move(im));
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images_ == b.images_;
    }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.images_ < b.images_;
    }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (images_[i] != i) return false;
        return true;
    }

    /// Conjugate s * this * s^{-1}.
    Permutation conjugated_by(const Permutation& s) const {
        std::vector<int> im(images_.size());
        for (int i = 0; i < degree(); ++i) im[s.images_[i]] = s.images_[images_[i]];
        return Permutation(std::move(im));
    }

    /// Cycles in a deterministic order (each cycle starts at its smallest
    /// element, cycles sorted by that element).
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(images_.size(), 0);
        for (int i = 0; i < degree(); ++i) {
            if (seen[i]) continue;
            std::vector<int> c;
            for (int j = i; !seen[j]; j = images_[j]) {
                seen[j] = 1;
                c.push_back(j);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    /// Cycle lengths sorted in decreasing order.
    std::vector<int> cycle_type() const {
        std::vector<int> t;
        for (const auto& c : cycles()) t.push_back(int(c.size()));
        std::sort(t.rbegin(), t.rend());
        return t;
    }

private:
    std::vector<int> images_;
};

inline Permutation commutator(const Permutation& h, const Permutation& v) {
    if (h.degree() != v.degree())
        throw std::invalid_argument("commutator: degree mismatch");
    return h * v * h.inverse() * v.inverse();
}

}  // namespace hodgetau

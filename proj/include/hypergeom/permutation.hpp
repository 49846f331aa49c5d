#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hypergeom {

// Permutation of {1..n} in one-line notation: image(a) is the image of a.
class Perm {
  public:
    explicit Perm(std::vector<int> image) : img_(std::move(image)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
                throw DataError("not a permutation in one-line notation");
            seen[v - 1] = true;
        }
        if (img_.empty()) throw DataError("empty permutation");
    }

    static Perm identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Perm(std::move(v));
    }

    // All of S_n in lexicographic one-line order.
    static std::vector<Perm> all(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        std::vector<Perm> out;
        do {
            out.push_back(Perm(v));
        } while (std::next_permutation(v.begin(), v.end()));
        return out;
    }

    // "231" digits; valid for the supported range n <= 9.
    static Perm parse(const std::string& s) {
        std::vector<int> v;
        for (char c : s) {
            if (c < '1' || c > '9') throw DataError("bad permutation string: " + s);
            v.push_back(c - '0');
        }
        return Perm(std::move(v));
    }

    int n() const { return static_cast<int>(img_.size()); }
    int operator()(int a) const {
        if (a < 1 || a > n()) throw DataError("permutation argument out of range");
        return img_[a - 1];
    }

    // omega composed with the transposition (i j) on the right: swaps the
    // images of i and j.
    Perm swapped(int i, int j) const {
        std::vector<int> v = img_;
        std::swap(v[i - 1], v[j - 1]);
        return Perm(std::move(v));
    }

    int sign() const {
        int s = 1;
        for (int a = 0; a < n(); ++a)
            for (int b = a + 1; b < n(); ++b)
                if (img_[a] > img_[b]) s = -s;
        return s;
    }

    std::string str() const {
        std::string s;
        for (int v : img_) s += static_cast<char>('0' + v);
        return s;
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

  private:
    std::vector<int> img_;
};

}  // namespace hypergeom

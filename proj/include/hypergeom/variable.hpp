#pragma once

#include <compare>
#include <string>

#include "errors.hpp"

namespace hypergeom {

// Symbol kinds, listed in their canonical order.  The total order on variables
// is (kind, index); it fixes leading coefficients, printing order, and the
// monomial order used for exact division.
//
//   x      Chern polynomial variable (no index)
//   H      hyperplane-type generators H1, H2, ...
//   kappa  pullback generators k1, k2, ... (printed with letter 'k')
//   y      Chern roots y1, ..., yn
//   u      torus weights u1, ..., un
//   alpha  the equivariant parameter (printed 'a', no index)
//   zeta   series bookkeeping z1, z2, ...   (internal; not parseable)
//   t      series bookkeeping t1, t2, ...   (internal; not parseable)
enum class VarKind : int { x = 0, H, kappa, y, u, alpha, zeta, t };

struct Variable {
    VarKind kind{VarKind::x};
    int index{0};  // 0 for x and alpha, >= 1 otherwise

    friend auto operator<=>(const Variable&, const Variable&) = default;

    static Variable x() { return {VarKind::x, 0}; }
    static Variable alpha() { return {VarKind::alpha, 0}; }
    static Variable H(int i) { return indexed(VarKind::H, i); }
    static Variable kappa(int i) { return indexed(VarKind::kappa, i); }
    static Variable y(int i) { return indexed(VarKind::y, i); }
    static Variable u(int i) { return indexed(VarKind::u, i); }
    static Variable zeta(int i) { return indexed(VarKind::zeta, i); }
    static Variable t(int i) { return indexed(VarKind::t, i); }

    std::string name() const {
        switch (kind) {
            case VarKind::x: return "x";
            case VarKind::alpha: return "a";
            case VarKind::H: return "H" + std::to_string(index);
            case VarKind::kappa: return "k" + std::to_string(index);
            case VarKind::y: return "y" + std::to_string(index);
            case VarKind::u: return "u" + std::to_string(index);
            case VarKind::zeta: return "z" + std::to_string(index);
            case VarKind::t: return "t" + std::to_string(index);
        }
        return "?";
    }

  private:
    static Variable indexed(VarKind k, int i) {
        if (i < 1) throw DataError("variable index must be positive");
        return {k, i};
    }
};

}  // namespace hypergeom

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magnitude/core.hpp"

namespace magnitude::inclexcl {

// det [[x, a^t], [b, M]] = x |M| - <a, adj(M) b>. Valid for singular M too.
template <typename T>
T bordered_determinant(const T& x, const Vector<T>& a, const Vector<T>& b,
                       const Matrix<T>& m) {
    if (m.rows() != m.cols() || a.size() != m.rows() || b.size() != m.rows())
        throw std::invalid_argument("bordered_determinant: dimension mismatch");
    if (m.rows() == 0) return x;
    Vector<T> adj_b = adjugate(m) * b;
    return x * determinant(m) - dot(a, adj_b);
}

namespace detail {

// Distinguished pair (i, j) of an n-point space, with A = X \ {j},
// B = X \ {i}, and the overlap X \ {i, j} carrying border vectors
// a (similarities from i) and b (from j).
template <typename T>
struct PairContext {
    std::size_t i, j;
    std::vector<std::size_t> overlap;
    Vector<T> a, b;
    Matrix<T> zeta_overlap;
    T delta_overlap;
};

template <typename T>
PairContext<T> make_pair_context(const SimilaritySpace<T>& s, std::size_t i, std::size_t j) {
    const std::size_t n = s.size();
    if (i == j || i >= n || j >= n)
        throw std::invalid_argument("pair: indices must be distinct and in range");
    if (n < 3) throw std::invalid_argument("pair: requires n >= 3");
    PairContext<T> ctx;
    ctx.i = i;
    ctx.j = j;
    for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) ctx.overlap.push_back(k);
    ctx.a.reserve(ctx.overlap.size());
    ctx.b.reserve(ctx.overlap.size());
    for (std::size_t k : ctx.overlap) {
        ctx.a.push_back(s.z(i, k));
        ctx.b.push_back(s.z(j, k));
    }
    ctx.zeta_overlap = s.zeta().principal(ctx.overlap);
    ctx.delta_overlap = determinant(ctx.zeta_overlap);
    return ctx;
}

template <typename T>
void require_nonsingular(const T& value, const std::string& which) {
    if (value == T(0))
        throw SingularMatrixError("singular determinant: " + which);
}

} // namespace detail

// max over k outside the pair of Z(i,k) * Z(j,k).
template <typename T>
T general_b_minus(const SimilaritySpace<T>& s, std::size_t i, std::size_t j) {
    auto ctx = detail::make_pair_context(s, i, j);
    T best = s.z(i, ctx.overlap[0]) * s.z(j, ctx.overlap[0]);
    for (std::size_t k : ctx.overlap) best = max2<T>(best, T(s.z(i, k) * s.z(j, k)));
    return best;
}

// b0 = <a, zeta_overlap^{-1} b>, equivalently the bordered determinant
// -det[[0, a^t],[b, zeta_overlap]] / delta_overlap; both routes are computed
// and must agree (exactly, in exact mode).
template <typename T>
T general_b0(const SimilaritySpace<T>& s, std::size_t i, std::size_t j) {
    auto ctx = detail::make_pair_context(s, i, j);
    detail::require_nonsingular(ctx.delta_overlap, "zeta of the overlap");
    Vector<T> y = solve_linear(ctx.zeta_overlap, ctx.b);
    T via_inner = dot(ctx.a, y);
    T via_border = -bordered_determinant(T(0), ctx.a, ctx.b, ctx.zeta_overlap) /
                   ctx.delta_overlap;
    if constexpr (is_exact_v<T>) {
        if (via_inner != via_border)
            throw std::logic_error("b0: bordered-determinant route disagrees with inner product");
    }
    return via_inner;
}

// adj(zeta_B) assembled from the block formula around one distinguished
// point of the given space; satisfies zeta_B * adj = det(zeta_B) * I. The
// input space is B itself (callers restrict the ambient space first).
template <typename T>
Matrix<T> adjugate_block(const SimilaritySpace<T>& spaceB, std::size_t distinguished) {
    const std::size_t m = spaceB.size();
    if (distinguished >= m) throw std::invalid_argument("adjugate_block: index out of range");
    if (m == 1) return Matrix<T>{{T(1)}};

    std::vector<std::size_t> core;
    for (std::size_t k = 0; k < m; ++k)
        if (k != distinguished) core.push_back(k);
    Matrix<T> zeta_core = spaceB.zeta().principal(core);
    const T delta_core = determinant(zeta_core);
    detail::require_nonsingular(delta_core, "zeta of the overlap");
    const T delta_b = determinant(spaceB);

    Vector<T> border(core.size());
    for (std::size_t p = 0; p < core.size(); ++p) border[p] = spaceB.z(distinguished, core[p]);
    Vector<T> y = solve_linear(zeta_core, border);
    Matrix<T> core_inv_scaled = adjugate(zeta_core); // = delta_core * zeta_core^{-1}

    Matrix<T> adj(m, m);
    adj(distinguished, distinguished) = delta_core;
    for (std::size_t p = 0; p < core.size(); ++p) {
        adj(distinguished, core[p]) = -delta_core * y[p];
        adj(core[p], distinguished) = -delta_core * y[p];
        for (std::size_t q = 0; q < core.size(); ++q)
            adj(core[p], core[q]) =
                delta_b / delta_core * core_inv_scaled(p, q) + delta_core * y[p] * y[q];
    }
    return adj;
}

template <typename T>
struct PairDecomposition {
    std::size_t i, j;
    T b_zero;
    T b_minus;
    T delta_A;
    T delta_B;
    T delta_overlap;
    T lhs; // det of the full space
    T rhs; // -delta_overlap (Zij - b0)^2 + delta_A delta_B / delta_overlap

    T residual() const { return lhs - rhs; }
};

template <typename T>
PairDecomposition<T> pair_decomposition(const SimilaritySpace<T>& s, std::size_t i,
                                        std::size_t j) {
    auto ctx = detail::make_pair_context(s, i, j);
    detail::require_nonsingular(ctx.delta_overlap, "zeta of the overlap");
    PairDecomposition<T> d;
    d.i = i;
    d.j = j;
    d.b_zero = general_b0(s, i, j);
    d.b_minus = general_b_minus(s, i, j);

    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != j) a_idx.push_back(k);
        if (k != i) b_idx.push_back(k);
    }
    d.delta_A = determinant(s.zeta().principal(a_idx));
    d.delta_B = determinant(s.zeta().principal(b_idx));
    d.delta_overlap = ctx.delta_overlap;
    d.lhs = determinant(s);
    const T gap = s.z(i, j) - d.b_zero;
    d.rhs = -d.delta_overlap * gap * gap + d.delta_A * d.delta_B / d.delta_overlap;
    return d;
}

template <typename T>
struct MagnitudeSplit {
    T mag;          // Mag of the whole input space, via the split formula
    T beta;         // weight of the distinguished point
    Vector<T> weight; // full weight vector, in the input space's index order
};

// Mag(B) = Mag(core) + (delta_core / delta_B) (1 - <w_core, b>)^2, where the
// core is the space minus the distinguished point; also reassembles the
// weight vector as (beta, w_core - beta zeta_core^{-1} b).
template <typename T>
MagnitudeSplit<T> magnitude_split(const SimilaritySpace<T>& spaceB,
                                  std::size_t distinguished) {
    const std::size_t m = spaceB.size();
    if (distinguished >= m) throw std::invalid_argument("magnitude_split: index out of range");
    if (m < 2) throw std::invalid_argument("magnitude_split: requires n >= 2");

    std::vector<std::size_t> core;
    for (std::size_t k = 0; k < m; ++k)
        if (k != distinguished) core.push_back(k);
    SimilaritySpace<T> core_space = spaceB.restricted(Subspace(core));
    const T delta_core = determinant(core_space);
    const T delta_b = determinant(spaceB);
    detail::require_nonsingular(delta_core, "zeta of the overlap");
    detail::require_nonsingular(delta_b, "zeta of B");

    Vector<T> border(core.size());
    for (std::size_t p = 0; p < core.size(); ++p) border[p] = spaceB.z(distinguished, core[p]);
    Vector<T> w_core = weighting(core_space);
    const T gap = T(1) - dot(border, w_core);

    MagnitudeSplit<T> out;
    out.beta = delta_core / delta_b * gap;
    out.mag = magnitude_of(core_space) + delta_core / delta_b * gap * gap;
    Vector<T> correction = solve_linear(core_space.zeta(), border);
    out.weight.assign(m, T(0));
    out.weight[distinguished] = out.beta;
    for (std::size_t p = 0; p < core.size(); ++p)
        out.weight[core[p]] = w_core[p] - out.beta * correction[p];
    return out;
}

template <typename T>
struct DefectReport {
    T delta_direct;  // Mag(X) - Mag(A) - Mag(B) + Mag(overlap)
    T delta_formula; // the closed form in alpha, beta
    T alpha;
    T beta;
    T b_zero;
    T z_pair;
};

template <typename T>
DefectReport<T> defect(const SimilaritySpace<T>& s, std::size_t i, std::size_t j) {
    auto ctx = detail::make_pair_context(s, i, j);
    detail::require_nonsingular(ctx.delta_overlap, "zeta of the overlap");

    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != j) a_idx.push_back(k);
        if (k != i) b_idx.push_back(k);
    }
    SimilaritySpace<T> space_a = s.restricted(Subspace(a_idx));
    SimilaritySpace<T> space_b = s.restricted(Subspace(b_idx));
    SimilaritySpace<T> space_ov = s.restricted(Subspace(ctx.overlap));

    const T delta_a = determinant(space_a);
    const T delta_b = determinant(space_b);
    const T delta_x = determinant(s);
    detail::require_nonsingular(delta_a, "zeta of A");
    detail::require_nonsingular(delta_b, "zeta of B");
    detail::require_nonsingular(delta_x, "zeta of the full space");

    DefectReport<T> r;
    r.z_pair = s.z(i, j);
    r.b_zero = general_b0(s, i, j);
    r.delta_direct = magnitude_of(s) - magnitude_of(space_a) - magnitude_of(space_b) +
                     magnitude_of(space_ov);

    Vector<T> w_ov = weighting(space_ov);
    r.alpha = ctx.delta_overlap / delta_a * (T(1) - dot(ctx.a, w_ov));
    r.beta = ctx.delta_overlap / delta_b * (T(1) - dot(ctx.b, w_ov));
    const T gap = r.b_zero - r.z_pair;
    r.delta_formula = gap / delta_x *
                      (gap * delta_a * r.alpha * r.alpha + gap * delta_b * r.beta * r.beta +
                       T(2) * delta_a * delta_b / ctx.delta_overlap * r.alpha * r.beta);
    return r;
}

// Copy of the space with Z(i,j) set to b0 for the pair. Full domain
// membership is revalidated: for n >= 5 the comparison remark's examples show
// b0 can drop below b_minus, in which case the glued entry breaks a triangle
// constraint and the construction fails.
template <typename T>
SimilaritySpace<T> glue_at_b0(const SimilaritySpace<T>& s, std::size_t i, std::size_t j) {
    const T b0 = general_b0(s, i, j);
    try {
        return s.with_entry(i, j, b0);
    } catch (const ValidationError& e) {
        throw ConstructionError(
            "glue_at_b0: b0 leaves the admissible domain (b0 < b_minus is possible for "
            "n >= 5): " + std::string(e.what()));
    }
}

struct GateWitness {
    std::size_t a, b;
    std::optional<std::size_t> gate; // empty: no gate exists for this pair
};

struct ProjectionWitness {
    std::size_t point;
    std::optional<std::size_t> projection;
};

struct ConditionReport {
    bool c1 = false;
    bool c2a = false;
    bool c2b = false;
    std::vector<GateWitness> c1_witnesses;            // one per (a, b) in A x B
    std::vector<ProjectionWitness> c2a_witnesses;     // one per a in A
    std::vector<ProjectionWitness> c2b_witnesses;     // one per b in B

    bool c2() const { return c2a || c2b; }
};

namespace detail {

// Gate equality in similarity coordinates: Z(a,b) = Z(a,c) * Z(c,b), which is
// the additive geodesic equality d(a,b) = d(a,c) + d(c,b).
template <typename T>
bool gates(const SimilaritySpace<T>& s, std::size_t a, std::size_t b, std::size_t c,
           double tol) {
    return approx_equal(s.z(a, b), T(s.z(a, c) * s.z(c, b)), tol);
}

template <typename T>
std::vector<ProjectionWitness> projections(const SimilaritySpace<T>& s,
                                           const std::vector<std::size_t>& side,
                                           const std::vector<std::size_t>& overlap,
                                           double tol) {
    std::vector<ProjectionWitness> out;
    for (std::size_t p : side) {
        ProjectionWitness w{p, std::nullopt};
        for (std::size_t pi : overlap) {
            bool all = true;
            for (std::size_t c : overlap)
                if (!gates(s, p, c, pi, tol)) {
                    all = false;
                    break;
                }
            if (all) {
                w.projection = pi;
                break;
            }
        }
        out.push_back(w);
    }
    return out;
}

} // namespace detail

// Exhaustive evaluation of the gating conditions for a cover A u B = X:
// (C1) every cross pair admits a gate in the overlap; (C2a)/(C2b) every point
// of A (resp. B) projects to the overlap.
template <typename T>
ConditionReport check_conditions(const SimilaritySpace<T>& s, const Subspace& a,
                                 const Subspace& b, double tol = kGateTolerance) {
    a.check_against(s.size());
    b.check_against(s.size());
    std::vector<std::size_t> overlap;
    std::vector<bool> covered(s.size(), false);
    for (std::size_t p : a.indices) covered[p] = true;
    for (std::size_t p : b.indices) covered[p] = true;
    for (std::size_t p = 0; p < s.size(); ++p)
        if (!covered[p])
            throw ValidationError("check_conditions: A and B do not cover the space (point " +
                                  std::to_string(p + 1) + " missing)");
    for (std::size_t p : a.indices)
        if (b.contains(p)) overlap.push_back(p);
    if (overlap.empty()) throw ValidationError("check_conditions: empty overlap");

    ConditionReport r;
    r.c1 = true;
    for (std::size_t pa : a.indices)
        for (std::size_t pb : b.indices) {
            GateWitness w{pa, pb, std::nullopt};
            for (std::size_t c : overlap)
                if (detail::gates(s, pa, pb, c, tol)) {
                    w.gate = c;
                    break;
                }
            if (!w.gate) r.c1 = false;
            r.c1_witnesses.push_back(w);
        }

    r.c2a_witnesses = detail::projections(s, a.indices, overlap, tol);
    r.c2b_witnesses = detail::projections(s, b.indices, overlap, tol);
    auto all_have = [](const std::vector<ProjectionWitness>& ws) {
        for (const auto& w : ws)
            if (!w.projection) return false;
        return true;
    };
    r.c2a = all_have(r.c2a_witnesses);
    r.c2b = all_have(r.c2b_witnesses);
    return r;
}

template <typename T>
struct ComparisonReport {
    T z_pair;
    T b_minus;
    T b_zero;
    bool c1 = false;
    bool c2 = false;
    bool c1_iff_pair_at_bminus = false; // C1 <=> Z_pair = b_minus
    bool c2_implies_bminus_is_b0 = false; // C2 => b_minus = b0
};

template <typename T>
ComparisonReport<T> comparison_report(const SimilaritySpace<T>& s, std::size_t i,
                                      std::size_t j, double tol = kGateTolerance) {
    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != j) a_idx.push_back(k);
        if (k != i) b_idx.push_back(k);
    }
    ConditionReport cond = check_conditions(s, Subspace(a_idx), Subspace(b_idx), tol);

    ComparisonReport<T> r;
    r.z_pair = s.z(i, j);
    r.b_minus = general_b_minus(s, i, j);
    r.b_zero = general_b0(s, i, j);
    r.c1 = cond.c1;
    r.c2 = cond.c2();
    r.c1_iff_pair_at_bminus = (r.c1 == approx_equal(r.z_pair, r.b_minus, tol));
    r.c2_implies_bminus_is_b0 = !r.c2 || approx_equal(r.b_minus, r.b_zero, tol);
    return r;
}

template <typename T>
struct FiveCircleReport {
    T p;
    T q;
    T b_zero;
    T b_minus;
};

// Expansion of b0 for n = 5 around the first overlap point:
// b0 = Z13 Z23 + ((Z14 - Z13 Z34) P + (Z15 - Z13 Z35) Q) / Delta_345.
template <typename T>
FiveCircleReport<T> five_circle_report(const SimilaritySpace<T>& s,
                                       double tol = kGateTolerance) {
    if (s.size() != 5) throw std::invalid_argument("five_circle_report: requires n = 5");
    const T z13 = s.z(0, 2), z14 = s.z(0, 3), z15 = s.z(0, 4), z23 = s.z(1, 2),
            z24 = s.z(1, 3), z25 = s.z(1, 4), z34 = s.z(2, 3), z35 = s.z(2, 4),
            z45 = s.z(3, 4);
    const T delta345 = determinant(s.zeta().principal({2, 3, 4}));
    detail::require_nonsingular(delta345, "zeta of the overlap {3,4,5}");

    FiveCircleReport<T> r;
    r.p = (T(1) - z35 * z35) * (z24 - z23 * z34) - (z25 - z23 * z35) * (z45 - z34 * z35);
    r.q = (T(1) - z34 * z34) * (z25 - z23 * z35) - (z24 - z23 * z34) * (z45 - z34 * z35);
    r.b_zero = z13 * z23 + ((z14 - z13 * z34) * r.p + (z15 - z13 * z35) * r.q) / delta345;
    r.b_minus = general_b_minus(s, 0, 1);

    const T cross = general_b0(s, 0, 1);
    if (!approx_equal(r.b_zero, cross, tol))
        throw std::logic_error("five_circle_report: expansion disagrees with general b0");
    return r;
}

template <typename T>
struct ConverseReport {
    bool positive_definite = false;   // hypothesis (i)
    bool positive_weighting_a = false; // hypothesis (ii)
    bool positive_weighting_b = false;
    bool z_le_b0 = false;             // hypothesis (iii)
    bool hypotheses_hold = false;     // all of the above, or unconditional at n = 3
    T delta;
    T z_pair;
    T b_zero;
    bool delta_zero = false;
    bool implication_ok = false;      // hypotheses && delta = 0  =>  Z_pair = b0
};

template <typename T>
ConverseReport<T> converse_check(const SimilaritySpace<T>& s, std::size_t i, std::size_t j,
                                 double tol = kFloatTolerance) {
    DefectReport<T> d = defect(s, i, j);

    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != j) a_idx.push_back(k);
        if (k != i) b_idx.push_back(k);
    }
    auto positive_weights = [&](const std::vector<std::size_t>& idx) {
        Vector<T> w = weighting(s.restricted(Subspace(idx)));
        for (const T& x : w)
            if (!(x > T(0))) return false;
        return true;
    };

    ConverseReport<T> r;
    r.positive_definite = is_positive_definite(s);
    r.positive_weighting_a = positive_weights(a_idx);
    r.positive_weighting_b = positive_weights(b_idx);
    r.z_le_b0 = d.z_pair <= d.b_zero;
    r.hypotheses_hold =
        s.size() == 3 ||
        (r.positive_definite && r.positive_weighting_a && r.positive_weighting_b && r.z_le_b0);
    r.delta = d.delta_direct;
    r.z_pair = d.z_pair;
    r.b_zero = d.b_zero;
    r.delta_zero = approx_equal(r.delta, T(0), tol);
    r.implication_ok =
        !(r.hypotheses_hold && r.delta_zero) || approx_equal(r.z_pair, r.b_zero, tol);
    return r;
}

} // namespace magnitude::inclexcl

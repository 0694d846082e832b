#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hkc/generators.hpp"
#include "hkc/graph.hpp"
#include "hkc/rng.hpp"

namespace hkc {

struct EigensolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigenpairs of the symmetric adjacency matrix, eigenvalues descending,
// eigenvectors unit-norm in matching column order. A partial decomposition
// holds the num_high largest pairs followed by the num_low most negative.
struct SpectralDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // column i pairs with values[i]
    int num_high = 0;         // 0/0 means a full decomposition
    int num_low = 0;

    int count() const { return (int)values.size(); }
};

namespace detail {

// Scale so the first coordinate of nonnegligible magnitude is positive;
// makes eigenvectors comparable across runs.
inline void canonical_sign(Eigen::Ref<Eigen::VectorXd> v) {
    double mx = v.cwiseAbs().maxCoeff();
    if (mx == 0) return;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12 * mx) {
            if (v[i] < 0) v = -v;
            return;
        }
    }
}

struct Csr {
    std::vector<int> xadj;
    std::vector<int> adjncy;

    explicit Csr(const Graph& g) {
        xadj.reserve(g.n() + 1);
        xadj.push_back(0);
        adjncy.reserve(2 * g.m());
        for (Vertex v = 1; v <= g.n(); ++v) {
            for (Vertex u : g.neighbors(v)) adjncy.push_back(u - 1);
            xadj.push_back((int)adjncy.size());
        }
    }

    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        int n = (int)xadj.size() - 1;
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int e = xadj[i]; e < xadj[i + 1]; ++e) s += x[adjncy[e]];
            y[i] = s;
        }
    }
};

inline Eigen::VectorXd pseudo_random_unit(int n, uint64_t tag) {
    Rng rng(Seed{0x5eedf00dULL ^ tag});
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.next_double() - 0.5;
    double nrm = v.norm();
    if (nrm == 0) v[0] = 1, nrm = 1;
    return v / nrm;
}

// Lanczos with full reorthogonalization and deflation. Eigenpairs are locked
// one per restart cycle, always the largest Ritz pair of its cycle; this
// stays correct for repeated eigenvalues, where a single Krylov space only
// ever sees one copy of each eigenvalue and the remaining copies live in the
// orthogonal complement explored by the next cycle. Returns the k
// algebraically largest eigenpairs of the operator; `deflate` vectors are
// projected out throughout.
template <class MatVec>
std::vector<std::pair<double, Eigen::VectorXd>> lanczos_largest(
    MatVec&& apply_op, int n, int k, double tol, long long budget,
    const std::vector<Eigen::VectorXd>& deflate, uint64_t seed_tag) {
    std::vector<std::pair<double, Eigen::VectorXd>> out;
    if (k == 0) return out;
    const int cap = std::min(n, std::max(160, 12 * k + 48));
    std::vector<Eigen::VectorXd> basis;
    Eigen::VectorXd carry;
    bool have_carry = false;
    uint64_t restart = 0;

    auto orth = [&](Eigen::VectorXd& v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& w : deflate) v -= w.dot(v) * w;
            for (const auto& [val, w] : out) v -= w.dot(v) * w;
            for (const auto& w : basis) v -= w.dot(v) * w;
        }
    };
    auto tridiag_eig = [](const std::vector<double>& alpha, const std::vector<double>& beta) {
        int m = (int)alpha.size();
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t);
    };
    auto assemble = [&](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es, int col) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
        for (int q = 0; q < (int)basis.size(); ++q) y += es.eigenvectors()(q, col) * basis[q];
        for (const auto& [val, u] : out) y -= u.dot(y) * u;
        for (const auto& u : deflate) y -= u.dot(y) * u;
        double yn = y.norm();
        if (yn < 1e-8) return Eigen::VectorXd();
        return Eigen::VectorXd(y / yn);
    };

    while ((int)out.size() < k) {
        if (budget <= 0)
            throw EigensolverError("lanczos: iteration budget exhausted before convergence");
        basis.clear();
        Eigen::VectorXd v = have_carry ? carry : pseudo_random_unit(n, seed_tag + restart);
        have_carry = false;
        orth(v);
        double nrm = v.norm();
        if (nrm < 1e-10) {
            v = pseudo_random_unit(n, seed_tag + 7777 + restart);
            orth(v);
            nrm = v.norm();
            if (nrm < 1e-10)
                throw EigensolverError("lanczos: no directions left outside deflation space");
        }
        v /= nrm;
        basis.push_back(v);
        std::vector<double> alpha, beta;
        Eigen::VectorXd w(n);

        for (int j = 0; j < cap; ++j) {
            apply_op(basis[j], w);
            --budget;
            double a = basis[j].dot(w);
            alpha.push_back(a);
            w -= a * basis[j];
            if (j > 0) w -= beta[j - 1] * basis[j - 1];
            orth(w);
            double b = w.norm();
            if (b < 1e-10) {
                // Krylov space closed: the top Ritz pair is exact. Lock it and
                // leave the rest of the invariant subspace to later cycles.
                auto es = tridiag_eig(alpha, beta);
                int m = (int)alpha.size();
                int best = 0;
                for (int i = 1; i < m; ++i)
                    if (es.eigenvalues()[i] > es.eigenvalues()[best]) best = i;
                auto y = assemble(es, best);
                if (y.size() > 0) out.push_back({es.eigenvalues()[best], y});
                break;
            }
            beta.push_back(b);
            bool last = j + 1 >= cap || budget <= 0;
            if ((j + 1) % 12 == 0 || last) {
                auto es = tridiag_eig(alpha, beta);
                int m = (int)alpha.size();
                int best = 0, second = -1;
                for (int i = 1; i < m; ++i)
                    if (es.eigenvalues()[i] > es.eigenvalues()[best]) best = i;
                for (int i = 0; i < m; ++i)
                    if (i != best && (second < 0 || es.eigenvalues()[i] > es.eigenvalues()[second]))
                        second = i;
                double theta = es.eigenvalues()[best];
                double resid = std::abs(beta[m - 1] * es.eigenvectors()(m - 1, best));
                if (resid <= 0.25 * tol * std::max(1.0, std::abs(theta))) {
                    auto y = assemble(es, best);
                    if (y.size() > 0) {
                        out.push_back({theta, y});
                        // warm-start the next cycle from the runner-up direction
                        if (second >= 0 && (int)out.size() < k) {
                            auto y2 = assemble(es, second);
                            if (y2.size() > 0) {
                                carry = y2;
                                have_carry = true;
                            }
                        }
                        break;
                    }
                }
                if (last) {
                    auto y = assemble(es, best);
                    if (y.size() > 0) {
                        carry = y;
                        have_carry = true;
                    }
                    break;
                }
            }
            basis.push_back(w / b);
        }
        ++restart;
    }

    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    out.resize(k);
    return out;
}

}  // namespace detail

// Full dense eigendecomposition; the oracle every spectral claim is checked
// against. Residuals meet 1e-9 * max(1, |lambda|).
inline SpectralDecomposition full_spectrum_dense(const Graph& g, int dense_cap = 2048) {
    if (g.n() > dense_cap) throw std::invalid_argument("full_spectrum_dense: n exceeds cap");
    if (g.n() == 0) throw std::invalid_argument("full_spectrum_dense: empty graph");
    int n = g.n();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : g.edges()) {
        a(u - 1, v - 1) = 1;
        a(v - 1, u - 1) = 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw EigensolverError("dense eigensolver failed");
    SpectralDecomposition d;
    d.values.resize(n);
    d.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        d.values[i] = es.eigenvalues()[n - 1 - i];  // descending
        d.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
        detail::canonical_sign(d.vectors.col(i));
    }
    return d;
}

// Iterative computation of the num_high largest and num_low most negative
// eigenpairs. Adjacency-times-vector is the only matrix primitive used.
inline SpectralDecomposition extreme_eigenpairs(const Graph& g, int num_low, int num_high,
                                                double tol = 1e-8) {
    int n = g.n();
    if (n == 0) throw std::invalid_argument("extreme_eigenpairs: empty graph");
    if (num_low < 0 || num_high < 0 || num_low + num_high > n)
        throw std::invalid_argument("extreme_eigenpairs: need num_low + num_high <= n");
    detail::Csr csr(g);
    long long budget_per_pair = 10ll * n;

    auto apply_pos = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { csr.apply(x, y); };
    auto apply_neg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        csr.apply(x, y);
        y = -y;
    };

    std::vector<Eigen::VectorXd> none;
    auto top = detail::lanczos_largest(apply_pos, n, num_high, tol,
                                       budget_per_pair * std::max(1, num_high), none, 0x70u);
    std::vector<Eigen::VectorXd> deflate;
    deflate.reserve(top.size());
    for (auto& [val, v] : top) deflate.push_back(v);
    auto bot = detail::lanczos_largest(apply_neg, n, num_low, tol,
                                       budget_per_pair * std::max(1, num_low), deflate, 0xb0u);

    SpectralDecomposition d;
    d.num_high = num_high;
    d.num_low = num_low;
    d.values.resize(num_high + num_low);
    d.vectors.resize(n, num_high + num_low);
    for (int i = 0; i < num_high; ++i) {
        d.values[i] = top[i].first;
        d.vectors.col(i) = top[i].second;
    }
    for (int i = 0; i < num_low; ++i) {
        // negated operator: most negative of A comes last, keep descending order
        d.values[num_high + i] = -bot[num_low - 1 - i].first;
        d.vectors.col(num_high + i) = bot[num_low - 1 - i].second;
    }
    // the contract: true residuals within tol
    Eigen::VectorXd ax(n);
    for (int i = 0; i < d.count(); ++i) {
        detail::canonical_sign(d.vectors.col(i));
        csr.apply(d.vectors.col(i), ax);
        double resid = (ax - d.values[i] * d.vectors.col(i)).norm();
        if (resid > tol * std::max(1.0, std::abs(d.values[i])))
            throw EigensolverError("extreme_eigenpairs: residual contract violated");
    }
    return d;
}

// max(lambda_2, |lambda_n|), the spectral expansion measure.
inline double lambda_expansion(const Graph& g, double tol = 1e-6) {
    if (g.n() < 2) throw std::invalid_argument("lambda_expansion: need n >= 2");
    if (g.n() <= 64) {
        auto d = full_spectrum_dense(g);
        return std::max(d.values[1], std::abs(d.values[g.n() - 1]));
    }
    auto d = extreme_eigenpairs(g, 1, 2, tol);
    return std::max(d.values[1], std::abs(d.values[2]));
}

// Unit-norm class-indicator combinations: column 0 is the normalized all-ones
// vector; for k=3 the remaining columns are the classic (2,-1,-1)/(0,1,-1)
// pattern vectors, for larger k a Helmert-style orthogonal completion.
inline Eigen::MatrixXd indicator_basis(const Coloring& planted) {
    int n = planted.n();
    int k = planted.k;
    if (!planted.is_total()) throw std::invalid_argument("indicator_basis: partial coloring");
    Eigen::MatrixXd pk(k, k);  // pk.col(j) = pattern vector over color classes
    pk.col(0).setOnes();
    if (k == 3) {
        pk.col(1) << 2, -1, -1;
        pk.col(2) << 0, 1, -1;
    } else {
        for (int j = 1; j < k; ++j) {
            pk.col(j).setZero();
            for (int i = 0; i < j; ++i) pk(i, j) = 1;
            pk(j, j) = -j;
        }
    }
    Eigen::MatrixXd basis(n, k);
    for (int j = 0; j < k; ++j) {
        for (int v = 1; v <= n; ++v) basis(v - 1, j) = pk(planted.of(v) - 1, j);
        double nrm = basis.col(j).norm();
        if (nrm > 0) basis.col(j) /= nrm;
    }
    return basis;
}

enum class PlantingMode { RandomPlanting, AdversarialPlanting };

struct SpectrumValidationOptions {
    double lam1_slack = 0.08;    // window half-width as a fraction of d
    double bottom_slack = 0.08;  // same for the two most negative eigenvalues
    double middle_c = 6.0;       // middle bound 2*lam + c*sqrt(d) (or sqrt(d*lam))
    double align_slack = 0.2;    // projection norm must reach 1 - slack
    int dense_cap = 2048;
    double tol = 1e-6;
};

struct SpectrumReport {
    double lam1 = 0, lam_n1 = 0, lam_n = 0;
    double max_middle = 0;      // largest |lambda_i| over 2 <= i <= n-2
    double lam_host = 0;        // measured expansion of the host
    double lam1_lo = 0, lam1_hi = 0;
    double bottom_lo = 0, bottom_hi = 0;
    double middle_bound = 0;
    double alignment = 0;       // min over x,y of ||proj onto span(e_{n-1},e_n)||
    bool lam1_ok = false, bottom_ok = false, middle_ok = false, align_ok = false;
    bool all_ok = false;
};

// Checks the planted-spectrum predictions with parameterized slack. Report
// only; never throws on a failed window.
inline SpectrumReport validate_planted_spectrum(const PlantedInstance& inst, PlantingMode mode,
                                                SpectrumValidationOptions opts = {}) {
    if (inst.planted.k != 3)
        throw std::invalid_argument("validate_planted_spectrum: k must be 3");
    const Graph& g = inst.result;
    int n = g.n();
    double d = inst.params.d != 0 ? inst.params.d : inst.host.average_degree();

    Eigen::MatrixXd bottom_pair(n, 2);
    SpectrumReport r;
    if (n <= opts.dense_cap) {
        auto sd = full_spectrum_dense(g, opts.dense_cap);
        r.lam1 = sd.values[0];
        r.lam_n = sd.values[n - 1];
        r.lam_n1 = sd.values[n - 2];
        r.max_middle = 0;
        for (int i = 1; i <= n - 3; ++i)
            r.max_middle = std::max(r.max_middle, std::abs(sd.values[i]));
        bottom_pair.col(0) = sd.vectors.col(n - 2);
        bottom_pair.col(1) = sd.vectors.col(n - 1);
    } else {
        auto sd = extreme_eigenpairs(g, 3, 2, opts.tol);
        r.lam1 = sd.values[0];
        r.lam_n = sd.values[4];
        r.lam_n1 = sd.values[3];
        r.max_middle = std::max(std::abs(sd.values[1]), std::abs(sd.values[2]));
        bottom_pair.col(0) = sd.vectors.col(3);
        bottom_pair.col(1) = sd.vectors.col(4);
    }
    r.lam_host = lambda_expansion(inst.host, opts.tol);

    r.lam1_lo = (2.0 / 3.0 - opts.lam1_slack) * d;
    r.lam1_hi = (2.0 / 3.0 + opts.lam1_slack) * d;
    r.bottom_lo = (-1.0 / 3.0 - opts.bottom_slack) * d;
    r.bottom_hi = (-1.0 / 3.0 + opts.bottom_slack) * d;
    r.middle_bound = mode == PlantingMode::RandomPlanting
                         ? 2 * r.lam_host + opts.middle_c * std::sqrt(d)
                         : 2 * r.lam_host + opts.middle_c * std::sqrt(d * r.lam_host);

    r.lam1_ok = r.lam1 >= r.lam1_lo && r.lam1 <= r.lam1_hi;
    r.bottom_ok = r.lam_n >= r.bottom_lo && r.lam_n <= r.bottom_hi && r.lam_n1 >= r.bottom_lo &&
                  r.lam_n1 <= r.bottom_hi;
    r.middle_ok = r.max_middle <= r.middle_bound;

    auto basis = indicator_basis(inst.planted);  // columns: 1bar, xbar, ybar
    double proj_x = (bottom_pair.transpose() * basis.col(1)).norm();
    double proj_y = (bottom_pair.transpose() * basis.col(2)).norm();
    r.alignment = std::min(proj_x, proj_y);
    r.align_ok = r.alignment >= 1.0 - opts.align_slack;

    r.all_ok = r.lam1_ok && r.bottom_ok && r.middle_ok && r.align_ok;
    return r;
}

struct MixingCheck {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

// Expander mixing lemma discrepancy for a d-regular graph.
inline MixingCheck mixing_discrepancy(const Graph& g, const VertexSet& S, const VertexSet& T,
                                      int d, double lam_hint = -1) {
    if (!g.is_regular(d)) throw std::invalid_argument("mixing_discrepancy: graph not d-regular");
    double lam = lam_hint >= 0 ? lam_hint : lambda_expansion(g);
    MixingCheck c;
    double e = (double)edges_between(g, S, T);
    c.lhs = std::abs(e - (double)d * S.size() * T.size() / g.n());
    c.rhs = lam * std::sqrt((double)S.size() * T.size());
    c.holds = c.lhs <= c.rhs + 1e-9;
    return c;
}

}  // namespace hkc

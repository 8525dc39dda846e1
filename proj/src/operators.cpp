#include "hyperstab/operators.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/quadrature.hpp"

#include <cmath>

namespace hyperstab {

namespace {
const QuadRule& element_rule() {
    static const QuadRule r = gauss_legendre(4);
    return r;
}
} // namespace

SectorOperator::SectorOperator(GridPtr grid, int l, double lambda)
    : grid_(std::move(grid)), l_(l), lambda_(lambda) {
    if (!grid_) throw InputError("SectorOperator: null grid");
    if (l < 0) throw InputError("SectorOperator: sector index must be >= 0");
    first_node_ = (l == 0) ? 0 : 1;

    const auto& x = grid_->nodes();
    const int n = grid_->n();
    const double ang = l * (l + n - 2.0);
    const std::size_t m = x.size() - 1 - first_node_; // Dirichlet at the last node
    A_.diag.assign(m, 0.0);
    A_.off.assign(m - 1, 0.0);
    load_mass_.assign(m, 0.0);

    const QuadRule& qr = element_rule();
    // element [x_e, x_{e+1}] contributes to dof indices e-first and e+1-first
    for (std::size_t e = 0; e + 1 < x.size(); ++e) {
        const double xa = x[e], xb = x[e + 1];
        const double he = xb - xa;
        double k_aa = 0, k_ab = 0, k_bb = 0; // stiffness + potential
        double m_a = 0, m_b = 0;             // lumped unit mass
        for (std::size_t q = 0; q < qr.nodes.size(); ++q) {
            const double t = 0.5 * (xa + xb) + 0.5 * he * qr.nodes[q];
            const double w = 0.5 * he * qr.weights[q];
            const double sh = std::sinh(t);
            const double a_coef = std::pow(sh, n - 1.0);
            const double pot = ang * std::pow(sh, n - 3.0) - lambda * a_coef;
            const double phi_b = (t - xa) / he, phi_a = 1.0 - phi_b;
            const double grad = 1.0 / he;
            k_aa += w * (a_coef * grad * grad + pot * phi_a * phi_a);
            k_bb += w * (a_coef * grad * grad + pot * phi_b * phi_b);
            k_ab += w * (-a_coef * grad * grad + pot * phi_a * phi_b);
            m_a += w * a_coef * phi_a;
            m_b += w * a_coef * phi_b;
        }
        const auto add = [&](std::size_t node, double v, std::vector<double>& dst) {
            if (node < first_node_ || node + 1 >= x.size()) return;
            dst[node - first_node_] += v;
        };
        add(e, k_aa, A_.diag);
        add(e + 1, k_bb, A_.diag);
        add(e, m_a, load_mass_);
        add(e + 1, m_b, load_mass_);
        if (e >= first_node_ && e + 2 < x.size()) A_.off[e - first_node_] += k_ab;
        if (e + 2 == x.size()) dirichlet_coupling_ = k_ab;
    }
}

SymTridiag SectorOperator::weighted_mass(const std::function<double(double)>& wfun) const {
    const auto& x = grid_->nodes();
    const int n = grid_->n();
    SymTridiag M;
    M.diag.assign(dof(), 0.0);
    M.off.assign(dof() - 1, 0.0);
    const QuadRule& qr = element_rule();
    for (std::size_t e = 0; e + 1 < x.size(); ++e) {
        const double xa = x[e], xb = x[e + 1];
        const double he = xb - xa;
        double m_aa = 0, m_ab = 0, m_bb = 0;
        for (std::size_t q = 0; q < qr.nodes.size(); ++q) {
            const double t = 0.5 * (xa + xb) + 0.5 * he * qr.nodes[q];
            const double w = 0.5 * he * qr.weights[q];
            const double coef = wfun(t) * std::pow(std::sinh(t), n - 1.0);
            const double phi_b = (t - xa) / he, phi_a = 1.0 - phi_b;
            m_aa += w * coef * phi_a * phi_a;
            m_bb += w * coef * phi_b * phi_b;
            m_ab += w * coef * phi_a * phi_b;
        }
        const auto add_diag = [&](std::size_t node, double v) {
            if (node < first_node_ || node + 1 >= x.size()) return;
            M.diag[node - first_node_] += v;
        };
        add_diag(e, m_aa);
        add_diag(e + 1, m_bb);
        if (e >= first_node_ && e + 2 < x.size()) M.off[e - first_node_] += m_ab;
    }
    return M;
}

std::vector<double> SectorOperator::lumped_mass(const std::function<double(double)>& wfun) const {
    SymTridiag M = weighted_mass(wfun);
    std::vector<double> d(M.diag);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        d[i] += M.off[i];
        d[i + 1] += M.off[i];
    }
    return d;
}

std::vector<double> SectorOperator::restrict_to_dof(const std::vector<double>& nodal) const {
    if (nodal.size() != grid_->size()) throw InputError("restrict_to_dof: length mismatch");
    return std::vector<double>(nodal.begin() + first_node_, nodal.end() - 1);
}

std::vector<double> SectorOperator::extend_to_nodes(const std::vector<double>& dofv) const {
    std::vector<double> out(grid_->size(), 0.0);
    for (std::size_t i = 0; i < dofv.size(); ++i) out[i + first_node_] = dofv[i];
    return out;
}

std::pair<std::vector<double>, double>
SectorOperator::solve(const std::vector<double>& f_nodal) const {
    const auto f = restrict_to_dof(f_nodal);
    std::vector<double> b(dof());
    for (std::size_t i = 0; i < dof(); ++i) b[i] = load_mass_[i] * f[i];
    std::vector<double> lower(A_.off), diag(A_.diag), upper(A_.off);
    auto phi = solve_tridiag(lower, diag, upper, b);
    long double pairing = 0.0L;
    for (std::size_t i = 0; i < dof(); ++i) pairing += (long double)b[i] * phi[i];
    return {extend_to_nodes(phi), grid_->omega() * static_cast<double>(pairing)};
}

} // namespace hyperstab

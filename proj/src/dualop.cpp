#include "fracdual/dualop/dualop.hpp"

#include <algorithm>
#include <vector>

namespace fracdual {
namespace {

// Joins a note onto an accumulator, skipping duplicates and empties.
void append_note(std::string& acc, const std::string& note) {
  if (note.empty() || acc.find(note) != std::string::npos) return;
  if (!acc.empty()) acc += "; ";
  acc += note;
}

}  // namespace

EvalStatus worse_status(EvalStatus a, EvalStatus b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

EvalResult dual_apply(const TestFunction& u, const SpatialVec& x, double t,
                      Side side, const FractionalParams& p,
                      const TimeQuadrature& tq, const SpaceQuadrature& sq) {
  const EvalResult time_part = marchaud(time_line(u, x), t, side, p, tq);
  const EvalResult space_part = frac_laplacian(space_line(u, t), x, p, sq);

  EvalResult out;
  out.value = time_part.value + space_part.value;
  out.err_estimate = time_part.err_estimate + space_part.err_estimate;
  out.status = worse_status(time_part.status, space_part.status);
  append_note(out.note, time_part.note);
  append_note(out.note, space_part.note);
  return out;
}

GridOperatorField sample_dual_on_grid(const TestFunction& u, Side side,
                                      const FractionalParams& p,
                                      const SpaceTimeGrid& grid,
                                      const TimeQuadrature& tq,
                                      const SpaceQuadrature& sq) {
  if (u.dim != grid.dim())
    throw DomainError("sample_dual_on_grid: function and grid dimension differ");

  GridOperatorField out(grid);
  const int M = grid.t_steps();
  const std::size_t spatial = grid.spatial_size();

  for (const ProductTerm& term : u.terms) {
    if (term.coeff == Complex(0.0, 0.0)) continue;

    TimeLine tl;
    tl.parts.push_back({Complex(1.0, 0.0), term.time});
    SpaceLine sl;
    sl.parts.push_back({Complex(1.0, 0.0), term.space});

    // Pin one truncation radius per term so every node shares a panel layout.
    TimeQuadrature tq_term = tq;
    tq_term.fixed_panels = true;
    double t_trunc = tq.fixed_truncation;
    for (int l = 0; l < M; ++l)
      t_trunc = std::max(t_trunc, marchaud_truncation(tl, grid.t_coord(l), side, p, tq));
    tq_term.fixed_truncation = t_trunc;

    SpaceQuadrature sq_term = sq;
    sq_term.fixed_panels = true;
    double x_trunc = sq.fixed_truncation;
    for (std::size_t is = 0; is < spatial; ++is)
      x_trunc = std::max(x_trunc, fraclap_truncation(sl, grid.x_point(is), p, sq));
    sq_term.fixed_truncation = x_trunc;

    std::vector<Complex> dg(M), g(M);
    double dg_err = 0.0;
    for (int l = 0; l < M; ++l) {
      const double t = grid.t_coord(l);
      const EvalResult r = marchaud(tl, t, side, p, tq_term);
      dg[l] = r.value;
      dg_err = std::max(dg_err, r.err_estimate);
      out.status = worse_status(out.status, r.status);
      append_note(out.note, r.note);
      g[l] = term.time.value(t);
    }

    std::vector<Complex> ls(spatial), eta(spatial);
    double ls_err = 0.0;
    for (std::size_t is = 0; is < spatial; ++is) {
      const SpatialVec x = grid.x_point(is);
      const EvalResult r = frac_laplacian(sl, x, p, sq_term);
      ls[is] = r.value;
      ls_err = std::max(ls_err, r.err_estimate);
      out.status = worse_status(out.status, r.status);
      append_note(out.note, r.note);
      eta[is] = term.space.value(x);
    }

    double eta_max = 0.0, g_max = 0.0;
    for (const Complex& v : eta) eta_max = std::max(eta_max, std::abs(v));
    for (const Complex& v : g) g_max = std::max(g_max, std::abs(v));
    out.max_err += std::abs(term.coeff) * (eta_max * dg_err + g_max * ls_err);

    for (std::size_t is = 0; is < spatial; ++is) {
      const Eigen::Index base = static_cast<Eigen::Index>(is) * M;
      for (int l = 0; l < M; ++l)
        out.field.values[base + l] += term.coeff * (eta[is] * dg[l] + g[l] * ls[is]);
    }
  }
  return out;
}

}  // namespace fracdual

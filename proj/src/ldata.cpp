#include "courantkit/ldata.hpp"

namespace ck {

namespace {

GqVec realify_inverse(const RatVec& re, const RatVec& im) {
  GqVec out(re.size());
  for (Eigen::Index i = 0; i < re.size(); ++i) out(i) = GaussQ(re(i), im(i));
  return out;
}

// columns of m restricted to the listed indices
RatMat take_cols(const RatMat& m, const std::vector<int>& idx) {
  RatMat out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(idx[k]);
  return out;
}

GaussQ dotc(const GqVec& a, const GqVec& b) {  // plain bilinear sum
  GaussQ acc(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

}  // namespace

PointwiseLData pointwise_ldata(const CourantData& dd, const GacsComponents& comps,
                               const std::vector<Rational>& point) {
  const int n = comps.chart.dim(), m = comps.fiber_dim;
  const RatMat g = dd.bundle.fiber.metric;
  const GaussQ I = GaussQ::unit_i();

  RatMat jp = eval_at(comps.J, point), ap = eval_at(comps.A, point),
         bp = eval_at(comps.B, point), cp = eval_at(comps.C, point),
         mup = eval_at(comps.mu, point), nup = eval_at(comps.nu, point);
  RatMat nustar = (nup.transpose() * g * Rational(2)).eval();
  RatMat mustar = (mup.transpose() * g * Rational(2)).eval();

  // the component equations must hold at the point
  {
    RatMat e1 = jp * jp + bp * cp - nustar * mup + RatMat::Identity(n, n);
    RatMat e2 = -mup * nustar - nup * mustar + ap * ap + RatMat::Identity(m, m);
    RatMat e3 = jp * bp - bp * jp.transpose() - nustar * nup;
    if (!mat_is_zero<Rational>(e1) || !mat_is_zero<Rational>(e2) || !mat_is_zero<Rational>(e3))
      throw PreconditionError("pointwise_ldata: component equations fail at the point");
  }

  PointwiseLData out;
  out.point = point;

  // --- L directly: image of Id - i J_block ----------------------------------
  const int big = 2 * n + m;
  GqMat idm(big, big);
  {
    RatMat blocks(big, big);
    blocks.setConstant(Rational(0));
    blocks.block(0, 0, n, n) = jp;
    blocks.block(0, n, n, n) = bp;
    blocks.block(0, 2 * n, n, m) = -nustar;
    blocks.block(n, 0, n, n) = cp;
    blocks.block(n, n, n, n) = -jp.transpose();
    blocks.block(n, 2 * n, n, m) = -mustar;
    blocks.block(2 * n, 0, m, n) = mup;
    blocks.block(2 * n, n, m, n) = nup;
    blocks.block(2 * n, 2 * n, m, m) = ap;
    for (int r = 0; r < big; ++r)
      for (int c = 0; c < big; ++c)
        idm(r, c) = GaussQ(Rational(r == c ? 1 : 0), Rational(0)) - I * GaussQ(blocks(r, c));
  }
  out.l_direct = column_space(idm);
  if (out.l_direct.cols() * 2 != big)
    throw PreconditionError("pointwise_ldata: unexpected rank of the (1,0)-space");

  // --- real decomposition of W ------------------------------------------------
  std::vector<int> b_pivots;
  RatMat rgb = column_space(bp, &b_pivots);
  out.cb_pivots = b_pivots;
  const int rb = static_cast<int>(rgb.cols());

  std::vector<int> nu_pivots;
  RatMat rgnu = column_space(nustar, &nu_pivots);
  out.cnu_pivots = nu_pivots;
  const int rn = static_cast<int>(rgnu.cols());

  // intersection Rg B n Rg nu*, then a deterministic complement inside Rg nu*
  RatMat inter(n, 0);
  if (rb > 0 && rn > 0) {
    RatMat stack(n, rb + rn);
    stack.leftCols(rb) = rgb;
    stack.rightCols(rn) = -rgnu;
    RatMat ker = nullspace(stack);
    inter.resize(n, ker.cols());
    for (Eigen::Index c = 0; c < ker.cols(); ++c)
      inter.col(c) = rgb * ker.block(0, c, rb, 1);
  }
  std::vector<int> comp_choice;
  {
    RatMat probe(n, inter.cols() + rn);
    probe.leftCols(inter.cols()) = inter;
    probe.rightCols(rn) = rgnu;
    std::vector<int> piv;
    column_space(probe, &piv);
    for (int p : piv)
      if (p >= inter.cols()) comp_choice.push_back(p - static_cast<int>(inter.cols()));
  }
  out.rgnu0_choice = comp_choice;
  const int r0 = static_cast<int>(comp_choice.size());
  RatMat rgnu0 = take_cols(rgnu, comp_choice);

  // realified spanning set of W: columns (Re; Im)
  const int wreal_dim = n + rb + r0;
  RatMat wreal(2 * n, wreal_dim);
  wreal.setConstant(Rational(0));
  for (int k = 0; k < n; ++k) {
    wreal(k, k) = 1;                                   // Re = e_k
    wreal.block(n, k, n, 1) = -jp.col(k);              // Im = -J e_k
  }
  for (int t = 0; t < rb; ++t) wreal.block(n, n + t, n, 1) = rgb.col(t);      // i v
  for (int t = 0; t < r0; ++t) wreal.block(n, n + rb + t, n, 1) = rgnu0.col(t);  // i w
  if (rank_of(wreal) != wreal_dim)
    throw PreconditionError("pointwise_ldata: W decomposition is not direct");

  // complex basis of W
  {
    GqMat span(n, wreal_dim);
    for (int c = 0; c < wreal_dim; ++c)
      span.col(c) = realify_inverse(RatVec(wreal.block(0, c, n, 1)),
                                    RatVec(wreal.block(n, c, n, 1)));
    out.w_basis = column_space(span);
  }
  const int dw = static_cast<int>(out.w_basis.cols());
  if (2 * dw != wreal_dim)
    throw PreconditionError("pointwise_ldata: W is not a complex subspace");

  // W equals the anchor image of L
  {
    GqMat anchor_l(n, out.l_direct.cols());
    for (Eigen::Index c = 0; c < out.l_direct.cols(); ++c)
      anchor_l.col(c) = out.l_direct.block(0, c, n, 1);
    out.w_matches_anchor_image = same_span(out.w_basis, GqMat(column_space(anchor_l)));
  }

  // --- sigma_1 and eta on the real decomposition ------------------------------
  auto solve_b_restricted = [&](const RatVec& v) {
    RatMat bres = take_cols(bp, b_pivots);
    auto sol = solve_linear(bres, v);
    if (!sol) throw PreconditionError("pointwise_ldata: B-restricted solve failed");
    RatVec xi(n);
    xi.setConstant(Rational(0));
    for (size_t t = 0; t < b_pivots.size(); ++t) xi(b_pivots[t]) = (*sol)(static_cast<Eigen::Index>(t));
    return xi;
  };
  auto solve_nustar_restricted = [&](const RatVec& w) {
    RatMat nres = take_cols(nustar, nu_pivots);
    auto sol = solve_linear(nres, w);
    if (!sol) throw PreconditionError("pointwise_ldata: nu*-restricted solve failed");
    RatVec r(m);
    r.setConstant(Rational(0));
    for (size_t t = 0; t < nu_pivots.size(); ++t) r(nu_pivots[t]) = (*sol)(static_cast<Eigen::Index>(t));
    return r;
  };

  GqMat sig1(m, wreal_dim);
  GqMat eta1(n, wreal_dim);
  for (int k = 0; k < n; ++k) {
    // sigma_1(X - iJX) = -i mu X;  eta(X - iJX) = -i C X
    sig1.col(k) = complexify(RatVec(mup.col(k))) * (-I);
    eta1.col(k) = complexify(RatVec(cp.col(k))) * (-I);
  }
  for (int t = 0; t < rb; ++t) {
    RatVec v = rgb.col(t);
    RatVec xi = solve_b_restricted(v);
    // sigma_1(iv) = i nu B^{-1} v;  eta(iv) = -(Id + i J^T) B^{-1} v
    sig1.col(n + t) = complexify(RatVec(nup * xi)) * I;
    eta1.col(n + t) =
        -(complexify(xi) + complexify(RatVec(jp.transpose() * xi)) * I);
  }
  for (int t = 0; t < r0; ++t) {
    RatVec w = rgnu0.col(t);
    RatVec r = solve_nustar_restricted(w);
    // sigma_1(iw) = (Id - iA)(nu*)^{-1} w;  eta(iw) = i mu* (nu*)^{-1} w
    sig1.col(n + rb + t) = complexify(r) - complexify(RatVec(ap * r)) * I;
    eta1.col(n + rb + t) = complexify(RatVec(mustar * r)) * I;
  }

  auto real_coords = [&](const GqVec& z) {
    RatVec zr(2 * n);
    for (int i = 0; i < n; ++i) {
      zr(i) = z(i).re;
      zr(n + i) = z(i).im;
    }
    auto sol = solve_linear(wreal, zr);
    if (!sol) throw PreconditionError("pointwise_ldata: vector not in W");
    return *sol;
  };
  auto sigma1_of = [&](const GqVec& z) { return GqVec(sig1 * complexify(real_coords(z))); };
  auto eta1_of = [&](const GqVec& z) { return GqVec(eta1 * complexify(real_coords(z))); };
  auto sigma_of = [&](const GqVec& z) {
    GqVec iz = z * I;
    return GqVec((sigma1_of(z) - sigma1_of(iz) * I) * GaussQ(rat(1, 2)));
  };

  out.sigma.resize(m, dw);
  for (int a = 0; a < dw; ++a) out.sigma.col(a) = sigma_of(GqVec(out.w_basis.col(a)));

  // epsilon(Z, Z') = 1/4 (eta(Z)(Z') - i eta(iZ)(Z')) + 1/2 <sigma Z, sigma Z'>
  GqMat gc = complexify(g);
  out.epsilon.resize(dw, dw);
  for (int a = 0; a < dw; ++a)
    for (int b = 0; b < dw; ++b) {
      GqVec za = out.w_basis.col(a), zb = out.w_basis.col(b);
      GaussQ first = (dotc(eta1_of(za), zb) - I * dotc(eta1_of(GqVec(za * I)), zb)) *
                     GaussQ(rat(1, 4));
      GaussQ second =
          dotc(GqVec(gc * out.sigma.col(b)), GqVec(out.sigma.col(a))) * GaussQ(rat(1, 2));
      out.epsilon(a, b) = first + second;
    }
  out.epsilon_antisym = true;
  for (int a = 0; a < dw; ++a)
    for (int b = 0; b < dw; ++b)
      if (!(out.epsilon(a, b) + out.epsilon(b, a)).is_zero()) out.epsilon_antisym = false;

  // --- D -----------------------------------------------------------------------
  {
    RatMat stack(n, n + m);
    stack.leftCols(n) = bp;
    stack.rightCols(m) = -nustar;
    RatMat ker = nullspace(stack);  // columns (xi; r) with B xi = nu* r
    GqMat span(m, ker.cols());
    RatMat realspan(2 * m, ker.cols());
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
      RatVec xi = ker.block(0, c, n, 1), r = ker.block(n, c, m, 1);
      // (Id - iA) r - i nu xi
      RatVec re = r;
      RatVec im = -(ap * r + nup * xi).eval();
      span.col(c) = realify_inverse(re, im);
      realspan.block(0, c, m, 1) = re;
      realspan.block(m, c, m, 1) = im;
    }
    out.d_basis = column_space(span);
    int dq = static_cast<int>(out.d_basis.cols());
    out.d_is_complex_subspace = (rank_of(realspan) == 2 * dq);
    out.d_maximal = (2 * dq == m);
    out.d_isotropic = true;
    for (int a = 0; a < dq; ++a)
      for (int b = a; b < dq; ++b)
        if (!dotc(GqVec(gc * out.d_basis.col(b)), GqVec(out.d_basis.col(a))).is_zero())
          out.d_isotropic = false;
  }

  // --- reconstruction of L from (W, D, sigma, epsilon) -------------------------
  {
    const int dq = static_cast<int>(out.d_basis.cols());
    GqMat wt = out.w_basis.transpose();  // constraint matrix: xi(Z_b) rows
    std::vector<GqVec> cols;
    for (int a = 0; a < dw; ++a) {
      GqVec rhs(dw);
      for (int b = 0; b < dw; ++b)
        rhs(b) = GaussQ(2) * out.epsilon(a, b) -
                 dotc(GqVec(gc * out.sigma.col(a)), GqVec(out.sigma.col(b)));
      auto xi = solve_linear(wt, rhs);
      if (!xi) throw PreconditionError("pointwise_ldata: xi solve failed");
      GqVec u(big);
      u.setConstant(GaussQ(0));
      u.segment(0, n) = out.w_basis.col(a);
      u.segment(n, n) = *xi;
      u.segment(2 * n, m) = out.sigma.col(a);
      cols.push_back(u);
    }
    for (int c = 0; c < dq; ++c) {
      GqVec rhs(dw);
      for (int b = 0; b < dw; ++b)
        rhs(b) = -GaussQ(2) * dotc(GqVec(gc * GqVec(out.d_basis.col(c))),
                                   GqVec(out.sigma.col(b)));
      auto xi = solve_linear(wt, rhs);
      if (!xi) throw PreconditionError("pointwise_ldata: xi solve failed");
      GqVec u(big);
      u.setConstant(GaussQ(0));
      u.segment(n, n) = *xi;
      u.segment(2 * n, m) = out.d_basis.col(c);
      cols.push_back(u);
    }
    GqMat ann = nullspace(wt);  // W^0
    for (Eigen::Index c = 0; c < ann.cols(); ++c) {
      GqVec u(big);
      u.setConstant(GaussQ(0));
      u.segment(n, n) = ann.col(c);
      cols.push_back(u);
    }
    GqMat lrec(big, static_cast<Eigen::Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) lrec.col(static_cast<Eigen::Index>(c)) = cols[c];
    out.reconstruction_ok = same_span(lrec, out.l_direct) &&
                            rank_of(lrec) == static_cast<int>(out.l_direct.cols());
  }

  // L n conj(L) = 0
  {
    GqMat both(big, 2 * out.l_direct.cols());
    both.leftCols(out.l_direct.cols()) = out.l_direct;
    for (Eigen::Index c = 0; c < out.l_direct.cols(); ++c)
      for (int r = 0; r < big; ++r) both(r, out.l_direct.cols() + c) = out.l_direct(r, c).conj();
    out.l_cap_conjugate_trivial = rank_of(both) == big;
  }

  // --- epsilon oracle through a section of pi|_L -------------------------------
  // find u in L with pi(u) = Z_a and pi_G(u) = sigma(Z_a); then
  // eps(Z_a, Z_b) = 1/2 ((pi_{T*} u)(Z_b) + <sigma Z_a, sigma Z_b>)
  {
    out.epsilon_matches_oracle = true;
    GqMat constrained(n + m, out.l_direct.cols());
    constrained.topRows(n) = out.l_direct.topRows(n);
    constrained.bottomRows(m) = out.l_direct.bottomRows(m);
    for (int a = 0; a < dw && out.epsilon_matches_oracle; ++a) {
      GqVec rhs(n + m);
      rhs.segment(0, n) = out.w_basis.col(a);
      rhs.segment(n, m) = out.sigma.col(a);
      auto coeff = solve_linear(constrained, rhs);
      if (!coeff) {
        out.epsilon_matches_oracle = false;
        break;
      }
      GqVec u = out.l_direct * *coeff;
      for (int b = 0; b < dw; ++b) {
        GaussQ oracle = (dotc(GqVec(u.segment(n, n)), GqVec(out.w_basis.col(b))) +
                         dotc(GqVec(gc * out.sigma.col(a)), GqVec(out.sigma.col(b)))) *
                        GaussQ(rat(1, 2));
        if (!(oracle - out.epsilon(a, b)).is_zero()) out.epsilon_matches_oracle = false;
      }
    }
  }

  // --- non-degenerate extras ----------------------------------------------------
  if (rank_of(bp) == n) {
    out.nondegenerate = true;
    RatMat binv(n, n);
    for (int c = 0; c < n; ++c) {
      auto col = solve_linear(bp, RatVec(RatVec::Unit(n, c)));
      binv.col(c) = *col;
    }
    RatMat atilde = ap + nup * binv * nustar;
    RatMat nubinv = nup * binv;

    // sigma on the standard basis
    out.sigma_std.resize(m, n);
    for (int k = 0; k < n; ++k) {
      GqVec ek(n);
      ek.setConstant(GaussQ(0));
      ek(k) = GaussQ(1);
      auto coords = solve_linear(out.w_basis, ek);
      if (!coords) throw PreconditionError("pointwise_ldata: standard basis not in W");
      out.sigma_std.col(k) = out.sigma * *coords;
    }
    // sigma = 1/2 (Id + i Atilde) nu B^{-1}
    out.sigma_matches_formula = true;
    for (int k = 0; k < n; ++k) {
      GqVec expect = (complexify(RatVec(nubinv.col(k))) +
                      complexify(RatVec(atilde * nubinv.col(k))) * I) *
                     GaussQ(rat(1, 2));
      if (!vec_is_zero<GaussQ>(GqVec(out.sigma_std.col(k) - expect)))
        out.sigma_matches_formula = false;
    }

    // the documented gauge: shift by Hom(W, D) so sigma is real on real
    // vectors; concretely sigma_g(X) = Re sigma(X) - Atilde Im sigma(X)
    out.sigma_gauged.resize(m, n);
    for (int k = 0; k < n; ++k) {
      RatVec re(m), im(m);
      for (int t = 0; t < m; ++t) {
        re(t) = out.sigma_std(t, k).re;
        im(t) = out.sigma_std(t, k).im;
      }
      out.sigma_gauged.col(k) = complexify(RatVec(re - atilde * im));
    }
    out.gauged_sigma_is_nu_binv = true;
    for (int k = 0; k < n; ++k)
      if (!vec_is_zero<GaussQ>(
              GqVec(out.sigma_gauged.col(k) - complexify(RatVec(nubinv.col(k))))))
        out.gauged_sigma_is_nu_binv = false;

    // gauge shift must live in D
    for (int k = 0; k < n; ++k) {
      GqVec diff = out.sigma_gauged.col(k) - out.sigma_std.col(k);
      if (!spans_contain(out.d_basis, GqMat(diff))) out.gauged_sigma_is_nu_binv = false;
    }

    // epsilon for the gauged sigma via the section oracle, against
    // 1/2 (B_J + i B^{-1})
    RatMat bj = ((binv * jp + jp.transpose() * binv) * rat(-1, 2)).eval();
    GqMat constrained(n + m, out.l_direct.cols());
    constrained.topRows(n) = out.l_direct.topRows(n);
    constrained.bottomRows(m) = out.l_direct.bottomRows(m);
    out.epsilon_gauged.resize(n, n);
    out.gauged_epsilon_matches = true;
    std::vector<GqVec> sections;
    for (int k = 0; k < n; ++k) {
      GqVec rhs(n + m);
      GqVec ek(n);
      ek.setConstant(GaussQ(0));
      ek(k) = GaussQ(1);
      rhs.segment(0, n) = ek;
      rhs.segment(n, m) = out.sigma_gauged.col(k);
      auto coeff = solve_linear(constrained, rhs);
      if (!coeff) throw PreconditionError("pointwise_ldata: gauged section solve failed");
      sections.push_back(GqVec(out.l_direct * *coeff));
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        GaussQ val = (sections[static_cast<size_t>(j)](n + k) +
                      dotc(GqVec(gc * out.sigma_gauged.col(j)),
                           GqVec(out.sigma_gauged.col(k)))) *
                     GaussQ(rat(1, 2));
        out.epsilon_gauged(j, k) = val;
        GaussQ expect = GaussQ(bj(k, j), binv(k, j)) * GaussQ(rat(1, 2));
        if (!(val - expect).is_zero()) out.gauged_epsilon_matches = false;
      }
  }

  return out;
}

}  // namespace ck

#include "ringline/projline.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ringline {

namespace {

std::string pair_name(const FiniteRing& R, Row v) { return "(" + R.name(v[0]) + "," + R.name(v[1]) + ")"; }

Row scale(const FiniteRing& R, Elem u, Row v) { return {R.mul(u, v[0]), R.mul(u, v[1])}; }

Row first_row(const Mat2& m) { return {m.a, m.b}; }
Row second_row(const Mat2& m) { return {m.c, m.d}; }

}  // namespace

ProjectiveLine::ProjectiveLine(RingPtr ring) : ring_(std::move(ring)) {
  const FiniteRing& R = *ring_;
  const std::size_t n = R.size();
  if (n > kLineRingLimit) throw RingError("size cap exceeded: projective line needs |R| <= " + std::to_string(kLineRingLimit));
  if (!R.has_structure()) throw RingError("projective line needs the unit group of " + R.description());

  // Right ideals bR as membership vectors.
  right_ideal_.assign(n, std::vector<char>(n, 0));
  for (Elem b = 0; b < n; ++b)
    for (Elem y = 0; y < n; ++y) right_ideal_[b][R.mul(b, y)] = 1;

  // First rows of E_2(R): orbit of (1,0) under v -> v E(t), tracking a matrix.
  std::vector<std::int64_t> matrix_of(n * n, -1);
  std::vector<Mat2> matrices;
  auto key = [n](Row v) { return static_cast<std::size_t>(v[0]) * n + v[1]; };
  {
    std::deque<std::size_t> queue;
    matrices.push_back(identity(R));
    matrix_of[key({R.one(), 0})] = 0;
    queue.push_back(0);
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      for (Elem t = 0; t < n; ++t) {
        Mat2 next = mul_E(R, matrices[i], t);
        std::size_t k = key(first_row(next));
        if (matrix_of[k] >= 0) continue;
        matrix_of[k] = static_cast<std::int64_t>(matrices.size());
        matrices.push_back(next);
        queue.push_back(matrices.size() - 1);
      }
    }
  }
  // Unit multiples of reached pairs: diag(u,1) M has first row u (a,b).
  auto units = R.units();
  std::vector<Mat2> completion_of(n * n);
  std::vector<char> admissible(n * n, 0);
  for (std::size_t k = 0; k < n * n; ++k) {
    if (matrix_of[k] < 0) continue;
    const Mat2& m = matrices[static_cast<std::size_t>(matrix_of[k])];
    for (Elem u : units) {
      Row v = scale(R, u, first_row(m));
      std::size_t kv = key(v);
      if (admissible[kv]) continue;
      admissible[kv] = 1;
      completion_of[kv] = mul(R, diag(u, R.one()), m);
    }
  }
  // Remaining unimodular pairs: brute-force basis completion.
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      std::size_t k = key({a, b});
      if (admissible[k] || !unimodular({a, b})) continue;
      bool found = false;
      for (Elem c = 0; c < n && !found; ++c) {
        for (Elem d = 0; d < n && !found; ++d) {
          Mat2 m{a, b, c, d};
          if (is_invertible(R, m)) {
            admissible[k] = 1;
            completion_of[k] = m;
            found = true;
          }
        }
      }
    }
  }
  // Group admissible pairs into unit orbits; lexicographic scan makes the
  // first pair met the least of its orbit.
  lookup_.assign(n * n, -1);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      std::size_t k = key({a, b});
      if (!admissible[k] || lookup_[k] >= 0) continue;
      auto id = static_cast<std::int32_t>(reps_.size());
      reps_.push_back({a, b});
      completions_.push_back(completion_of[k]);
      auto inv = try_invert(R, completion_of[k]);
      if (!inv) throw std::logic_error("completion not invertible");
      completion_inverses_.push_back(*inv);
      for (Elem u : units) lookup_[key(scale(R, u, {a, b}))] = id;
    }
  }
  base_ = index_of({R.one(), 0});
}

std::optional<std::size_t> ProjectiveLine::find(Row v) const {
  const std::size_t n = ring_->size();
  if (v[0] >= n || v[1] >= n) return std::nullopt;
  std::int32_t id = lookup_[static_cast<std::size_t>(v[0]) * n + v[1]];
  if (id < 0) return std::nullopt;
  return static_cast<std::size_t>(id);
}

std::size_t ProjectiveLine::index_of(Row v) const {
  auto p = find(v);
  if (!p) throw std::invalid_argument("pair " + pair_name(*ring_, v) + " is not admissible");
  return *p;
}

bool ProjectiveLine::unimodular(Row v) const {
  const FiniteRing& R = *ring_;
  const auto& aR = right_ideal_[v[0]];
  const auto& bR = right_ideal_[v[1]];
  for (Elem y = 0; y < R.size(); ++y)
    if (bR[y] && aR[R.sub(R.one(), y)]) return true;
  return false;
}

bool ProjectiveLine::distant(std::size_t p, std::size_t q) const {
  Row v = act(*ring_, reps_[q], completion_inverses_[p]);
  return ring_->is_unit(v[1]);
}

std::size_t ProjectiveLine::apply(std::size_t p, const Mat2& m) const { return index_of(act(*ring_, reps_[p], m)); }

std::size_t ProjectiveLine::apply_E(std::size_t p, Elem t) const { return index_of(act_E(*ring_, reps_[p], t)); }

std::size_t ProjectiveLine::point_01() const { return index_of({0, ring_->one()}); }
std::size_t ProjectiveLine::point_11() const { return index_of({ring_->one(), ring_->one()}); }

std::string ProjectiveLine::name(std::size_t p) const { return "R" + pair_name(*ring_, reps_[p]); }

std::vector<std::size_t> embed_subring_line(const ProjectiveLine& sub_line, const ProjectiveLine& line) {
  const FiniteRing& S = sub_line.ring();
  std::vector<std::size_t> out(sub_line.size());
  for (std::size_t p = 0; p < sub_line.size(); ++p) {
    Row v = sub_line.rep(p);
    out[p] = line.index_of({S.to_parent(v[0]), S.to_parent(v[1])});
  }
  return out;
}

DistantGraph build_graph(const ProjectiveLine& line) {
  DistantGraph g;
  const std::size_t n = line.size();
  g.n = n;
  g.adjacency.assign(n, {});
  parallel_for(n, [&](std::size_t p) {
    for (std::size_t q = 0; q < n; ++q)
      if (q != p && line.distant(p, q)) g.adjacency[p].push_back(static_cast<std::uint32_t>(q));
  });
  g.dist.assign(n * n, DistantGraph::kUnreachable);
  parallel_for(n, [&](std::size_t s) {
    std::uint8_t* row = &g.dist[s * n];
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(s)};
    row[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t p = queue[head];
      for (std::uint32_t q : g.adjacency[p]) {
        if (row[q] != DistantGraph::kUnreachable) continue;
        row[q] = static_cast<std::uint8_t>(std::min<int>(row[p] + 1, DistantGraph::kUnreachable - 1));
        queue.push_back(q);
      }
    }
  });
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  g.component.assign(n, unset);
  for (std::size_t p = 0; p < n; ++p) {
    if (g.component[p] != unset) continue;
    auto label = static_cast<std::uint32_t>(g.components++);
    std::uint32_t diam = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (g.dist[p * n + q] == DistantGraph::kUnreachable) continue;
      g.component[q] = label;
      for (std::size_t r = 0; r < n; ++r)
        if (g.dist[q * n + r] != DistantGraph::kUnreachable) diam = std::max<std::uint32_t>(diam, g.dist[q * n + r]);
    }
    g.diameter.push_back(diam);
  }
  return g;
}

ParamSeq ComponentOrbit::witness(std::size_t p) const {
  ParamSeq out;
  if (!member[p]) throw std::invalid_argument("point outside the component");
  for (std::int64_t q = static_cast<std::int64_t>(p); parent[q] >= 0; q = parent[q]) out.push_back(letter[q]);
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint32_t ComponentOrbit::max_depth() const {
  std::uint32_t m = 0;
  for (std::size_t p : points) m = std::max(m, depth[p]);
  return m;
}

ComponentOrbit orbit_under(const ProjectiveLine& line, std::span<const Elem> generators) {
  ComponentOrbit o;
  const std::size_t n = line.size();
  o.member.assign(n, 0);
  o.parent.assign(n, -1);
  o.letter.assign(n, 0);
  o.depth.assign(n, 0);
  o.member[line.base()] = 1;
  o.points.push_back(line.base());
  for (std::size_t head = 0; head < o.points.size(); ++head) {
    std::size_t p = o.points[head];
    for (Elem t : generators) {
      std::size_t q = line.apply_E(p, t);
      if (o.member[q]) continue;
      o.member[q] = 1;
      o.parent[q] = static_cast<std::int64_t>(p);
      o.letter[q] = t;
      o.depth[q] = o.depth[p] + 1;
      o.points.push_back(q);
    }
  }
  return o;
}

ComponentOrbit component_of_base(const ProjectiveLine& line) {
  std::vector<Elem> all(line.ring().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
  return orbit_under(line, all);
}

CheckResult check_orbit_component(const ProjectiveLine& line, const DistantGraph& graph, const ComponentOrbit& orbit) {
  CheckResult r{"line/orbit-component/" + line.ring().description(), "component = E2-orbit of R(1,0)"};
  const std::uint32_t base_label = graph.component[line.base()];
  for (std::size_t p = 0; p < line.size(); ++p) {
    ++r.cases;
    bool in_component = graph.component[p] == base_label;
    if (in_component != orbit.contains(p)) {
      r.fail(line.name(p) + (in_component ? " in component but not in orbit" : " in orbit but not in component"));
      continue;
    }
    if (in_component && orbit.depth[p] != graph.distance(line.base(), p))
      r.fail(line.name(p) + ": witness length " + std::to_string(orbit.depth[p]) + " != distance " +
             std::to_string(graph.distance(line.base(), p)));
  }
  return r;
}

ParamSeq two_transitive_normalizer(const ProjectiveLine& line, const ComponentOrbit& orbit, std::size_t p,
                                   std::size_t q) {
  const FiniteRing& R = line.ring();
  if (!orbit.contains(p) || !orbit.contains(q)) throw std::invalid_argument("points must lie in the component of R(1,0)");
  if (!line.distant(p, q)) throw std::invalid_argument("points " + line.name(p) + ", " + line.name(q) + " are not distant");
  ParamSeq W = word_inverse(R, orbit.witness(p));
  std::size_t q1 = q;
  for (Elem t : W) q1 = line.apply_E(q1, t);
  Row v = line.rep(q1);  // distant to R(1,0), so v = y (t, 1)
  Elem t = R.mul(R.inverse(v[1]), v[0]);
  W.push_back(0);
  W.push_back(R.neg(t));
  std::size_t pp = p, qq = q;
  for (Elem s : W) {
    pp = line.apply_E(pp, s);
    qq = line.apply_E(qq, s);
  }
  if (pp != line.base() || qq != line.point_01()) throw std::logic_error("normalizer failed");
  return W;
}

bool harmonic_precondition(const ProjectiveLine& line, std::size_t p0, std::size_t p1, std::size_t p2,
                           std::size_t p3) {
  return line.distant(p0, p1) && line.distant(p0, p2) && line.distant(p0, p3) && line.distant(p1, p2) &&
         line.distant(p1, p3);
}

bool harmonic(const ProjectiveLine& line, std::size_t p0, std::size_t p1, std::size_t p2, std::size_t p3) {
  if (!harmonic_precondition(line, p0, p1, p2, p3))
    throw std::invalid_argument("harmonic: quadruple " + line.name(p0) + "," + line.name(p1) + "," + line.name(p2) +
                                "," + line.name(p3) + " violates the distance precondition");
  const FiniteRing& R = line.ring();
  Row r0 = line.rep(p0), r1 = line.rep(p1);
  auto inv = try_invert(R, Mat2{r0[0], r0[1], r1[0], r1[1]});
  if (!inv) throw std::logic_error("distant pair without invertible stack");
  // In normalized coordinates p0 = R(1,0), p1 = R(0,1), p_k = R(x_k, y_k)
  // with x_k, y_k units, i.e. R(y_k^{-1} x_k, 1).
  Row v2 = act(R, line.rep(p2), *inv), v3 = act(R, line.rep(p3), *inv);
  Elem u2 = R.mul(R.inverse(v2[1]), v2[0]);
  Elem u3 = R.mul(R.inverse(v3[1]), v3[0]);
  return u3 == R.neg(u2);
}

namespace {

struct FirstFailure {
  std::mutex mu;
  std::size_t index = static_cast<std::size_t>(-1);
  std::string witness;
  void offer(std::size_t i, std::string w) {
    std::lock_guard lock(mu);
    if (i < index) {
      index = i;
      witness = std::move(w);
    }
  }
  void apply(CheckResult& r) const {
    if (index != static_cast<std::size_t>(-1)) r.fail(witness);
  }
};

// Exhaustive DFS over all words |T| <= len tracking E(T) and E(T^α).
struct CertificateWalk {
  const JordanMap& alpha;
  const ProjectiveLine& line;
  const ProjectiveLine& target;
  const std::vector<std::int64_t>& table;
  std::size_t len;
  std::uint64_t cases = 0;
  std::string first_row_fail, second_row_fail, stab_fail;
  ParamSeq word;

  void visit(const Mat2& m, const Mat2& mp) {
    ++cases;
    const FiniteRing& R = line.ring();
    const FiniteRing& Rp = target.ring();
    auto describe = [&] { return "T=" + to_string(R, word); };
    auto p = line.find(first_row(m));
    auto pp = target.find(first_row(mp));
    if (!p || !pp || table[*p] != static_cast<std::int64_t>(*pp)) {
      if (first_row_fail.empty())
        first_row_fail = describe() + ": R" + pair_name(R, first_row(m)) + " -> R'" + pair_name(Rp, first_row(mp)) +
                         " disagrees with the table";
    }
    auto q = line.find(second_row(m));
    auto qp = target.find(second_row(mp));
    if (!q || !qp || table[*q] != static_cast<std::int64_t>(*qp)) {
      if (second_row_fail.empty())
        second_row_fail = describe() + ": second row R" + pair_name(R, second_row(m)) + " -> R'" +
                          pair_name(Rp, second_row(mp)) + " disagrees with the table";
    }
    if (m.b == 0 && (mp.b != 0 || !Rp.is_unit(mp.a))) {
      if (stab_fail.empty()) stab_fail = describe() + ": first row (u,0) but image first row " + pair_name(Rp, first_row(mp));
    }
  }

  void dfs(const Mat2& m, const Mat2& mp) {
    visit(m, mp);
    if (word.size() == len) return;
    const FiniteRing& R = line.ring();
    for (Elem t = 0; t < R.size(); ++t) {
      word.push_back(t);
      dfs(mul_E(R, m, t), mul_E(target.ring(), mp, alpha(t)));
      word.pop_back();
    }
  }
};

}  // namespace

InducedMap induced_map(const JordanMap& alpha, const ProjectiveLine& line, const ProjectiveLine& target,
                       const ComponentOrbit& orbit, std::uint32_t diameter, std::size_t cert_len) {
  if (&line.ring() != alpha.domain.get() || &target.ring() != alpha.codomain.get())
    throw std::invalid_argument("induced_map: lines do not match the map's rings");
  const FiniteRing& R = line.ring();
  const FiniteRing& Rp = target.ring();
  InducedMap m;
  m.alpha = &alpha;
  m.line = &line;
  m.target = &target;
  m.orbit = &orbit;
  m.table.assign(line.size(), -1);
  m.table[line.base()] = static_cast<std::int64_t>(target.base());
  for (std::size_t p : orbit.points) {
    if (orbit.parent[p] < 0) continue;
    auto from = static_cast<std::size_t>(m.table[static_cast<std::size_t>(orbit.parent[p])]);
    m.table[p] = static_cast<std::int64_t>(target.apply_E(from, alpha(orbit.letter[p])));
  }
  m.target_orbit = orbit_under(target, alpha.image_closure.elements);
  const std::string& label = alpha.label;

  // Certificate over all words of length <= cert_len, split by first letter.
  {
    CheckResult first{"induced/well-defined/" + label, "R(1,0)E(T) -> R'(1',0')E(T^α) well defined"};
    CheckResult second{"induced/second-row/" + label, "R(0,1)E(T) -> R'(0',1')E(T^α)"};
    CheckResult stab{"induced/stabilizer-transfer/" + label, "first row (u,0) -> image first row (u',0')"};
    std::vector<CertificateWalk> walks;
    const std::size_t n = R.size();
    walks.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) walks.push_back(CertificateWalk{alpha, line, target, m.table, cert_len});
    walks[n].visit(identity(R), identity(Rp));
    if (cert_len > 0) {
      parallel_for(n, [&](std::size_t t) {
        CertificateWalk& w = walks[t];
        w.word.push_back(static_cast<Elem>(t));
        w.dfs(E(R, static_cast<Elem>(t)), E(Rp, alpha(static_cast<Elem>(t))));
      });
    }
    for (std::size_t k = 0; k <= n; ++k) {
      const CertificateWalk& w = walks[(k + n) % (n + 1)];
      first.cases += w.cases;
      second.cases += w.cases;
      stab.cases += w.cases;
      if (!w.first_row_fail.empty()) first.fail(w.first_row_fail);
      if (!w.second_row_fail.empty()) second.fail(w.second_row_fail);
      if (!w.stab_fail.empty()) stab.fail(w.stab_fail);
    }
    m.certificate.push_back(first);
    m.certificate.push_back(second);
    m.certificate.push_back(stab);
  }

  // Affine formulas.
  {
    CheckResult r{"induced/affine/" + label, "R(t,1) -> R'(t^α,1'), R(1,t) -> R'(1',t^α)"};
    for (Elem t = 0; t < R.size(); ++t) {
      r.cases += 2;
      std::size_t p = line.index_of({t, R.one()});
      if (m.table[p] != static_cast<std::int64_t>(target.index_of({alpha(t), Rp.one()})))
        r.fail("t=" + R.name(t) + ": R(t,1) maps to " + target.name(static_cast<std::size_t>(m.table[p])));
      std::size_t q = line.index_of({R.one(), t});
      if (m.table[q] != static_cast<std::int64_t>(target.index_of({Rp.one(), alpha(t)})))
        r.fail("t=" + R.name(t) + ": R(1,t) maps to " + target.name(static_cast<std::size_t>(m.table[q])));
    }
    m.certificate.push_back(r);
  }

  // Fundamental triple.
  {
    CheckResult r{"induced/fundamental-triple/" + label, "R(1,0), R(0,1), R(1,1) fixed"};
    const std::array<std::pair<std::size_t, std::size_t>, 3> triple{
        {{line.base(), target.base()}, {line.point_01(), target.point_01()}, {line.point_11(), target.point_11()}}};
    for (auto [p, pp] : triple) {
      ++r.cases;
      if (m.table[p] != static_cast<std::int64_t>(pp))
        r.fail(line.name(p) + " maps to " + target.name(static_cast<std::size_t>(m.table[p])));
    }
    m.certificate.push_back(r);
  }

  // Single formula R(e_1^m(T), e_1^{m-1}(T)) -> R'(e_1^m(T^α), e_1^{m-1}(T^α)).
  {
    const int mlen = static_cast<int>(std::max<std::uint32_t>(2, diameter));
    CheckResult r{"induced/single-formula/" + label, "m = max(2, diameter) single formula"};
    r.note = "m=" + std::to_string(mlen);
    const FreePoly& top = e_ij(1, mlen);
    const FreePoly& below = e_ij(1, mlen - 1);
    SweepBudget budget;
    std::vector<char> seen_length(static_cast<std::size_t>(mlen) + 1, 0);
    auto outcome = sweep_words(static_cast<std::uint32_t>(R.size()), static_cast<std::size_t>(mlen), budget,
                               [&](std::span<const std::uint32_t> T) {
                                 if (T.size() != static_cast<std::size_t>(mlen)) return true;
                                 Row v{evaluate(top, R, T), evaluate(below, R, T)};
                                 ParamSeq Ta(T.size());
                                 for (std::size_t i = 0; i < T.size(); ++i) Ta[i] = alpha(T[i]);
                                 Row vp{evaluate(top, Rp, std::span<const Elem>(Ta)),
                                        evaluate(below, Rp, std::span<const Elem>(Ta))};
                                 auto p = line.find(v);
                                 auto pp = target.find(vp);
                                 return p && pp && m.table[*p] == static_cast<std::int64_t>(*pp);
                               });
    r.mode = outcome.mode;
    r.cases = 1;
    for (int k = 1; k <= mlen; ++k) r.cases *= R.size();
    if (outcome.mode == Mode::sampled) r.cases = budget.samples;
    if (outcome.first_failure) r.fail("T=" + to_string(R, *outcome.first_failure));
    m.certificate.push_back(r);
  }

  // Image inside C'', equal to C'' when the image is a subring.
  {
    CheckResult r{"induced/image-in-C2/" + label, "C^ᾱ inside C''"};
    std::vector<char> hit(target.size(), 0);
    for (std::size_t p : orbit.points) {
      ++r.cases;
      auto img = static_cast<std::size_t>(m.table[p]);
      hit[img] = 1;
      if (!m.target_orbit.contains(img)) r.fail(line.name(p) + " maps to " + target.name(img) + " outside C''");
    }
    m.certificate.push_back(r);
    if (alpha.image_closure.closed) {
      CheckResult e{"induced/image-equals-C2/" + label, "R^α = R'' implies C^ᾱ = C''"};
      for (std::size_t q : m.target_orbit.points) {
        ++e.cases;
        if (!hit[q]) e.fail(target.name(q) + " in C'' has no preimage");
      }
      m.certificate.push_back(e);
    }
    std::set<std::int64_t> distinct;
    for (std::size_t p : orbit.points) distinct.insert(m.table[p]);
    m.injective = distinct.size() == orbit.points.size();
    CheckResult inj{"induced/injectivity-observed/" + label, "observed only"};
    inj.cases = orbit.points.size();
    inj.note = std::string(m.injective ? "injective" : "not injective") + "; alpha " +
               (std::set<Elem>(alpha.values.begin(), alpha.values.end()).size() == alpha.values.size() ? "injective"
                                                                                                     : "not injective");
    m.certificate.push_back(inj);
  }
  return m;
}

CheckResult check_equivariance(const InducedMap& m) {
  const ProjectiveLine& line = *m.line;
  const ProjectiveLine& target = *m.target;
  const FiniteRing& R = line.ring();
  CheckResult r{"induced/equivariance/" + m.alpha->label, "(p E(t))^ᾱ = p^ᾱ E(t^α)"};
  const auto& pts = m.orbit->points;
  FirstFailure ff;
  parallel_for(pts.size(), [&](std::size_t i) {
    std::size_t p = pts[i];
    for (Elem t = 0; t < R.size(); ++t) {
      std::size_t lhs = static_cast<std::size_t>(m.table[line.apply_E(p, t)]);
      std::size_t rhs = target.apply_E(static_cast<std::size_t>(m.table[p]), (*m.alpha)(t));
      if (lhs != rhs) {
        ff.offer(i * R.size() + t, "p=" + line.name(p) + ", t=" + R.name(t) + ": " + target.name(lhs) +
                                       " != " + target.name(rhs));
        return;
      }
    }
  });
  r.cases = pts.size() * R.size();
  ff.apply(r);
  return r;
}

std::vector<CheckResult> check_map_preservation(const InducedMap& m, const DistantGraph& graph, const DistantGraph& target_graph,
                                      const SweepBudget& budget) {
  const ProjectiveLine& line = *m.line;
  const ProjectiveLine& target = *m.target;
  const FiniteRing& R = line.ring();
  const std::string& label = m.alpha->label;
  const auto& pts = m.orbit->points;
  const std::size_t n = pts.size();
  auto img = [&](std::size_t p) { return static_cast<std::size_t>(m.table[p]); };
  std::vector<CheckResult> out;

  CheckResult distant{"harmonic/distant-pairs/" + label, "distant pairs map to distant pairs"};
  CheckResult contraction{"harmonic/contraction/" + label, "dist(p^ᾱ,q^ᾱ) <= dist(p,q)"};
  {
    FirstFailure fd, fc;
    std::vector<std::uint64_t> dcount(n, 0);
    parallel_for(n, [&](std::size_t i) {
      std::size_t p = pts[i];
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t q = pts[j];
        if (line.distant(p, q)) {
          ++dcount[i];
          if (!target.distant(img(p), img(q)))
            fd.offer(i * n + j, line.name(p) + ", " + line.name(q) + " map to non-distant " + target.name(img(p)) +
                                    ", " + target.name(img(q)));
        }
        if (target_graph.distance(img(p), img(q)) > graph.distance(p, q))
          fc.offer(i * n + j, line.name(p) + ", " + line.name(q) + ": distance " +
                                  std::to_string(graph.distance(p, q)) + " grows to " +
                                  std::to_string(target_graph.distance(img(p), img(q))));
      }
    });
    for (auto c : dcount) distant.cases += c;
    contraction.cases = static_cast<std::uint64_t>(n) * n;
    fd.apply(distant);
    fc.apply(contraction);
  }
  out.push_back(distant);
  out.push_back(contraction);

  CheckResult harm{"harmonic/quadruples/" + label, "harmonic quadruples map to harmonic quadruples"};
  auto check_quad = [&](std::size_t p0, std::size_t p1, std::size_t p2, std::size_t p3) -> std::string {
    std::size_t q0 = img(p0), q1 = img(p1), q2 = img(p2), q3 = img(p3);
    auto names = [&] {
      return "(" + line.name(p0) + "," + line.name(p1) + "," + line.name(p2) + "," + line.name(p3) + ")";
    };
    if (!harmonic_precondition(target, q0, q1, q2, q3)) return names() + ": image not mutually distant";
    if (!harmonic(target, q0, q1, q2, q3)) return names() + ": image not harmonic";
    return {};
  };
  const double total = static_cast<double>(n) * n * n * n;
  if (total <= static_cast<double>(budget.budget)) {
    FirstFailure ff;
    std::vector<std::uint64_t> count(n, 0);
    parallel_for(n, [&](std::size_t i0) {
      std::size_t p0 = pts[i0];
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        std::size_t p1 = pts[i1];
        if (!line.distant(p0, p1)) continue;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          std::size_t p2 = pts[i2];
          if (!line.distant(p0, p2) || !line.distant(p1, p2)) continue;
          for (std::size_t i3 = 0; i3 < n; ++i3) {
            std::size_t p3 = pts[i3];
            if (!line.distant(p0, p3) || !line.distant(p1, p3)) continue;
            if (!harmonic(line, p0, p1, p2, p3)) continue;
            ++count[i0];
            std::string w = check_quad(p0, p1, p2, p3);
            if (!w.empty()) ff.offer(((i0 * n + i1) * n + i2) * n + i3, w);
          }
        }
      }
    });
    for (auto c : count) harm.cases += c;
    ff.apply(harm);
    harm.note = "harmonic quadruples among all " + std::to_string(static_cast<std::uint64_t>(total));
  } else {
    harm.mode = Mode::sampled;
    std::mt19937_64 rng(budget.seed);
    auto units = R.units();
    struct Quad {
      std::size_t p[4];
    };
    std::vector<Quad> quads;
    quads.reserve(budget.samples);
    for (std::uint64_t s = 0; s < budget.samples; ++s) {
      std::size_t p0 = pts[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
      const auto& adj = graph.adjacency[p0];
      std::size_t p1 = adj[std::uniform_int_distribution<std::size_t>(0, adj.size() - 1)(rng)];
      Elem u = units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)];
      Row r0 = line.rep(p0), r1 = line.rep(p1);
      Row a = scale(R, u, r0), b = scale(R, R.neg(u), r0);
      Row v2{R.add(a[0], r1[0]), R.add(a[1], r1[1])};
      Row v3{R.add(b[0], r1[0]), R.add(b[1], r1[1])};
      quads.push_back({{p0, p1, line.index_of(v2), line.index_of(v3)}});
    }
    FirstFailure ff;
    parallel_for(quads.size(), [&](std::size_t i) {
      const auto& q = quads[i].p;
      if (!harmonic_precondition(line, q[0], q[1], q[2], q[3]) || !harmonic(line, q[0], q[1], q[2], q[3])) {
        ff.offer(i, "sample " + std::to_string(i) + ": constructed quadruple not recognized as harmonic");
        return;
      }
      std::string w = check_quad(q[0], q[1], q[2], q[3]);
      if (!w.empty()) ff.offer(i, w);
    });
    harm.cases = quads.size();
    ff.apply(harm);
    harm.note = "seed " + std::to_string(budget.seed);
  }
  out.push_back(harm);
  return out;
}

std::vector<std::int64_t> paste_components(std::span<const std::uint32_t> component, std::uint32_t base_component,
                                           const std::function<std::int64_t(std::size_t)>& base_map,
                                           const std::function<std::size_t(std::size_t)>& to_base,
                                           const std::function<std::int64_t(std::uint32_t, std::int64_t)>& from_base) {
  std::vector<std::int64_t> out(component.size(), -1);
  for (std::size_t p = 0; p < component.size(); ++p) {
    if (component[p] == base_component) {
      out[p] = base_map(p);
      continue;
    }
    std::size_t q = to_base(p);
    if (component[q] != base_component) throw std::invalid_argument("choice matrix does not map the component onto C");
    out[p] = from_base(component[p], base_map(q));
  }
  return out;
}

std::vector<std::int64_t> extend_map(const InducedMap& m, const DistantGraph& graph,
                                     const std::map<std::uint32_t, ComponentChoice>& choices) {
  const ProjectiveLine& line = *m.line;
  const ProjectiveLine& target = *m.target;
  const FiniteRing& R = line.ring();
  const FiniteRing& Rp = target.ring();
  const std::uint32_t base_label = graph.component[line.base()];
  std::map<std::uint32_t, Mat2> a_inverse;
  for (std::uint32_t mu = 0; mu < graph.components; ++mu) {
    if (mu == base_label) continue;
    auto it = choices.find(mu);
    if (it == choices.end()) throw std::invalid_argument("no choice matrices for component " + std::to_string(mu));
    auto inv = try_invert(R, it->second.a);
    if (!inv) throw std::invalid_argument("A_" + std::to_string(mu) + " is not invertible");
    if (!is_invertible(Rp, it->second.a_prime))
      throw std::invalid_argument("A'_" + std::to_string(mu) + " is not invertible");
    auto p = line.find(first_row(it->second.a));
    if (!p || graph.component[*p] != mu)
      throw std::invalid_argument("first row of A_" + std::to_string(mu) + " is not in component " + std::to_string(mu));
    a_inverse[mu] = *inv;
  }
  return paste_components(
      graph.component, base_label, [&](std::size_t p) { return m.table[p]; },
      [&](std::size_t p) { return line.apply(p, a_inverse.at(graph.component[p])); },
      [&](std::uint32_t mu, std::int64_t img) {
        return static_cast<std::int64_t>(target.apply(static_cast<std::size_t>(img), choices.at(mu).a_prime));
      });
}

std::optional<Mat2> sigma(const JordanMap& alpha, const Mat2& m) {
  if (alpha.homomorphism) return Mat2{alpha(m.a), alpha(m.b), alpha(m.c), alpha(m.d)};
  if (!alpha.antihomomorphism) return std::nullopt;
  const FiniteRing& Rp = *alpha.codomain;
  Mat2 ta{alpha(m.a), alpha(m.c), alpha(m.b), alpha(m.d)};
  auto inv = try_invert(Rp, ta);
  if (!inv) throw std::logic_error("(M^T)^α not invertible");
  Mat2 e0 = E(Rp, 0);
  Mat2 e0_inv{0, Rp.neg(Rp.one()), Rp.one(), 0};
  return mul(Rp, mul(Rp, e0_inv, *inv), e0);
}

std::optional<SigmaExtension> sigma_extension(const InducedMap& m, std::uint64_t seed) {
  const JordanMap& alpha = *m.alpha;
  if (alpha.proper()) return std::nullopt;
  const ProjectiveLine& line = *m.line;
  const ProjectiveLine& target = *m.target;
  const FiniteRing& R = line.ring();
  const FiniteRing& Rp = target.ring();
  const std::string kind = alpha.homomorphism ? "homomorphism" : "antihomomorphism";
  SigmaExtension ext;
  ext.table.resize(line.size());
  for (std::size_t p = 0; p < line.size(); ++p)
    ext.table[p] = static_cast<std::int64_t>(target.index_of(first_row(*sigma(alpha, line.completion(p)))));

  CheckResult agree{"sigma/sigma-agrees/" + alpha.label, "σ-extension restricts to ᾱ on C"};
  agree.note = kind;
  for (std::size_t p : m.orbit->points) {
    ++agree.cases;
    if (ext.table[p] != m.table[p])
      agree.fail(line.name(p) + ": " + target.name(static_cast<std::size_t>(ext.table[p])) + " vs ᾱ " +
                 target.name(static_cast<std::size_t>(m.table[p])));
  }
  ext.checks.push_back(agree);

  if (alpha.homomorphism) {
    CheckResult r{"sigma/entrywise/" + alpha.label, "R(a,b) -> R'(a^α,b^α)"};
    for (std::size_t p = 0; p < line.size(); ++p) {
      ++r.cases;
      Row v = line.rep(p);
      auto q = target.find({alpha(v[0]), alpha(v[1])});
      if (!q || static_cast<std::int64_t>(*q) != ext.table[p]) r.fail(line.name(p));
    }
    ext.checks.push_back(r);
  }

  CheckResult gen{"sigma/sigma-E/" + alpha.label, "E(t)^σ = E(t^α)"};
  for (Elem t = 0; t < R.size(); ++t) {
    ++gen.cases;
    if (*sigma(alpha, E(R, t)) != E(Rp, alpha(t))) gen.fail("t=" + R.name(t));
  }
  ext.checks.push_back(gen);

  CheckResult mult{"sigma/sigma-multiplicative/" + alpha.label, "(MN)^σ = M^σ N^σ"};
  {
    const std::size_t n = line.size();
    auto check = [&](std::size_t p, std::size_t q) {
      const Mat2& a = line.completion(p);
      const Mat2& b = line.completion(q);
      ++mult.cases;
      if (*sigma(alpha, mul(R, a, b)) != mul(Rp, *sigma(alpha, a), *sigma(alpha, b)))
        mult.fail("M=" + to_string(R, a) + ", N=" + to_string(R, b));
    };
    if (n * n <= 1'000'000) {
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) check(p, q);
    } else {
      mult.mode = Mode::sampled;
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int s = 0; s < 100'000; ++s) {
        std::size_t p = pick(rng);
        check(p, pick(rng));
      }
    }
  }
  ext.checks.push_back(mult);

  if (alpha.antihomomorphism && !alpha.homomorphism) {
    CheckResult st{"sigma/stabilizer-formula/" + alpha.label, "[[a,0],[c,d]]^σ formula, lower triangular"};
    auto units = R.units();
    for (Elem a : units) {
      for (Elem d : units) {
        for (Elem c = 0; c < R.size(); ++c) {
          ++st.cases;
          Mat2 mm{a, 0, c, d};
          Elem ai = Rp.inverse(alpha(a)), di = Rp.inverse(alpha(d));
          Mat2 expect{di, 0, Rp.mul(Rp.mul(ai, alpha(c)), di), ai};
          Mat2 got = *sigma(alpha, mm);
          if (got != expect) st.fail(to_string(R, mm) + " -> " + to_string(Rp, got) + ", expected " + to_string(Rp, expect));
        }
      }
    }
    ext.checks.push_back(st);
  }
  return ext;
}

}  // namespace ringline

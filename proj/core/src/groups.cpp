#include "limitlab/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_set>

namespace limitlab::groups {

namespace {

hyp::Mat lorentz_of(const Mobius& m, int n) {
  if (n == 2) return mobius::to_lorentz3(m);
  if (n == 1) return mobius::to_lorentz2(m);
  throw Error("Mobius generators require n = 1 or n = 2");
}

// Distance from x0 to a (possibly slightly off-shell) orbit vector y. Past
// distance ~1.3 the raw pairing is used as is: re-normalizing by
// sqrt(-<y, y>) would import the cancellation error of the Minkowski square,
// which grows like eps y_0^2, while the drift of the raw vector is O(L eps).
double displacement_of(const hyp::Vec& x0, const hyp::Vec& y_raw) {
  const double c_raw = -hyp::minkowski(x0, y_raw);
  if (c_raw > 1e6) return std::log(2.0 * c_raw);
  if (c_raw > 2.0) return std::acosh(c_raw);
  const double q = -hyp::minkowski(y_raw, y_raw);
  const hyp::Vec y = y_raw / std::sqrt(q);
  const double c = -hyp::minkowski(x0, y);
  if (c > 2.0) return std::acosh(c);
  const hyp::Vec diff = x0 - y;
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, hyp::minkowski(diff, diff))));
}

std::uint64_t mix(std::uint64_t h, std::int64_t v) {
  std::uint64_t x = static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  return h ^ x;
}

void check_disjoint(const std::vector<Circle>& circles) {
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (!(circles[i].radius > 0.0)) throw Error("schottky_group: circle " + std::to_string(i) + " has nonpositive radius");
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      const double dist = std::abs(circles[i].center - circles[j].center);
      if (dist <= circles[i].radius + circles[j].radius) {
        throw Error("schottky_group: circles " + std::to_string(i) + " and " + std::to_string(j) +
                    " do not have disjoint closures");
      }
    }
  }
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::FreeSchottky: return "free-schottky";
    case GroupKind::PuncturedTorus: return "punctured-torus";
    case GroupKind::Cyclic: return "cyclic";
    case GroupKind::Custom: return "custom";
  }
  return "custom";
}

GroupPresentation::GroupPresentation(GroupKind kind, int n, std::vector<hyp::Isometry> generators,
                                     std::optional<std::vector<Mobius>> mobius_generators, std::string name)
    : kind_(kind), n_(n), gens_(std::move(generators)), mobius_(std::move(mobius_generators)), name_(std::move(name)) {
  if (gens_.empty()) throw Error("GroupPresentation: no generators");
  if (static_cast<int>(gens_.size()) > kMaxGenerators) throw Error("GroupPresentation: too many generators");
  for (const auto& g : gens_) {
    if (g.n() != n_) throw DimensionMismatch("GroupPresentation: generator dimension differs from n");
  }
  letter_mats_.resize(2 * gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    letter_mats_[2 * i] = gens_[i].matrix();
    letter_mats_[2 * i + 1] = hyp::lorentz_inverse(gens_[i].matrix());
  }
  if (mobius_) {
    if (mobius_->size() != gens_.size()) throw Error("GroupPresentation: Mobius generator count mismatch");
    for (const auto& m : *mobius_) {
      letter_mobius_.push_back(m);
      letter_mobius_.push_back(m.inverse());
    }
  }
}

const hyp::Mat& GroupPresentation::letter_matrix(char letter) const {
  const int r = letter_rank(letter);
  if (!is_letter(letter) || r < 0 || r >= static_cast<int>(letter_mats_.size())) {
    throw Error(std::string("GroupPresentation: unknown letter '") + letter + "'");
  }
  return letter_mats_[static_cast<std::size_t>(r)];
}

const Mobius& GroupPresentation::letter_mobius(char letter) const {
  if (!mobius_) throw Error("GroupPresentation: group has no Mobius generators");
  const int r = letter_rank(letter);
  if (!is_letter(letter) || r < 0 || r >= static_cast<int>(letter_mobius_.size())) {
    throw Error(std::string("GroupPresentation: unknown letter '") + letter + "'");
  }
  return letter_mobius_[static_cast<std::size_t>(r)];
}

hyp::Isometry GroupPresentation::element(const Word& w) const {
  hyp::Mat m = hyp::Mat::Identity(n_ + 2, n_ + 2);
  for (char c : w) m = letter_matrix(c) * m;
  return hyp::Isometry::trusted(std::move(m));
}

Mobius GroupPresentation::mobius_element(const Word& w) const {
  mobius::Mat2 m = mobius::Mat2::Identity();
  for (char c : w) m = letter_mobius(c).matrix() * m;
  return Mobius(m);
}

GroupPresentation schottky_group(const std::vector<SchottkyPairing>& pairings, int n) {
  if (pairings.empty()) throw Error("schottky_group: need at least one pairing");
  if (n != 1 && n != 2) throw Error("schottky_group: n must be 1 or 2");
  std::vector<Circle> circles;
  for (const auto& p : pairings) {
    circles.push_back(p.from);
    circles.push_back(p.to);
  }
  check_disjoint(circles);
  std::vector<Mobius> mob;
  std::vector<hyp::Isometry> gens;
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    const auto& [c1, r1] = pairings[i].from;
    const auto& [c2, r2] = pairings[i].to;
    if (n == 1) {
      for (const auto& c : {pairings[i].from, pairings[i].to}) {
        if (std::abs(std::norm(c.center) - 1.0 - c.radius * c.radius) > 1e-9) {
          throw Error("schottky_group: circle of pairing " + std::to_string(i) +
                      " is not orthogonal to the unit circle (required for n = 1)");
        }
      }
    }
    // Inversion in `from` followed by the anti-similarity carrying `from` to
    // `to`; the unit factor makes the map disk-preserving in the symmetric case.
    Complex u(1.0, 0.0);
    if (std::abs(c1) > 0.0 && std::abs(c2) > 0.0) u = c1 * c2 / (std::abs(c1) * std::abs(c2));
    mobius::Mat2 m;
    m << c2, u * r1 * r2 - c1 * c2, Complex(1.0, 0.0), -c1;
    Mobius g(m);
    gens.emplace_back(lorentz_of(g, n));
    mob.push_back(g);
  }
  GroupPresentation out(GroupKind::FreeSchottky, n, std::move(gens), std::move(mob), "schottky");
  out.set_pairings(pairings);
  return out;
}

GroupPresentation schottky_demo(double center, double radius) {
  const Complex i(0.0, 1.0);
  return schottky_group({{{-center, radius}, {center, radius}}, {{-center * i, radius}, {center * i, radius}}}, 2);
}

GroupPresentation fuchsian_schottky(double center) {
  if (!(center > 1.0)) throw Error("fuchsian_schottky: center must exceed 1");
  const double r = std::sqrt(center * center - 1.0);
  const Complex i(0.0, 1.0);
  return schottky_group({{{-center, r}, {center, r}}, {{-center * i, r}, {center * i, r}}}, 1);
}

GroupPresentation punctured_torus_group(Complex x, Complex y, int n) {
  if (n != 1 && n != 2) throw Error("punctured_torus_group: n must be 1 or 2");
  const bool real_params = std::abs(x.imag()) < 1e-14 && std::abs(y.imag()) < 1e-14;
  if (n == 1 && !real_params) throw Error("punctured_torus_group: n = 1 requires real traces");
  // Markov relation z^2 - xyz + x^2 + y^2 = 0.
  const Complex disc = std::sqrt(x * x * y * y - 4.0 * (x * x + y * y));
  const Complex z = 0.5 * (x * y - disc);
  const Complex lam = 0.5 * (x + std::sqrt(x * x - 4.0));
  const Complex p = (z - y / lam) / (lam - 1.0 / lam);
  const Complex s = y - p;
  const Complex q = std::sqrt(p * s - 1.0);
  for (const Complex& v : {disc, z, lam, p, s, q}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(lam - 1.0 / lam) < 1e-12) {
      throw Error("punctured_torus_group: trace parameters give non-finite matrix entries");
    }
  }
  mobius::Mat2 a, b;
  a << lam, 0.0, 0.0, 1.0 / lam;
  b << p, q, q, s;
  const Mobius c = mobius::cayley();
  const Mobius ga = c * Mobius(a) * c.inverse();
  const Mobius gb = c * Mobius(b) * c.inverse();
  std::vector<Mobius> mob{ga, gb};
  std::vector<hyp::Isometry> gens{hyp::Isometry(lorentz_of(ga, n)), hyp::Isometry(lorentz_of(gb, n))};
  GroupPresentation out(GroupKind::PuncturedTorus, n, std::move(gens), std::move(mob), "punctured-torus");
  out.set_trace_parameters({x, y, z});
  if (!real_params) {
    out.set_heuristic(true);
    const double shortest = shortest_displacement(out, 4, hyp::InteriorPoint::origin(n));
    if (!(shortest > 1e-3)) {
      throw Error("punctured_torus_group: runaway orbit (shortest displacement " + std::to_string(shortest) +
                  "); parameters are far from discrete");
    }
  }
  return out;
}

GroupPresentation cyclic_group(int n, double translation) {
  if (!(translation > 0.0)) throw Error("cyclic_group: translation must be positive");
  std::vector<hyp::Isometry> gens{hyp::Isometry::boost(n, 0, translation)};
  std::optional<std::vector<Mobius>> mob;
  if (n <= 2) {
    mobius::Mat2 m;
    const double c = std::cosh(0.5 * translation), s = std::sinh(0.5 * translation);
    m << c, s, s, c;
    mob = std::vector<Mobius>{Mobius(m)};
  }
  return GroupPresentation(GroupKind::Cyclic, n, std::move(gens), std::move(mob), "cyclic");
}

GroupPresentation custom_group(int n, std::vector<hyp::Isometry> generators, std::string name) {
  return GroupPresentation(GroupKind::Custom, n, std::move(generators), std::nullopt, std::move(name));
}

GroupPresentation conjugate(const GroupPresentation& g, const Mobius& h) {
  if (!g.has_mobius()) throw Error("conjugate: group has no Mobius generators");
  std::vector<Mobius> mob;
  std::vector<hyp::Isometry> gens;
  for (int i = 0; i < g.rank(); ++i) {
    const Mobius m = h * g.letter_mobius(letter_for(i, false)) * h.inverse();
    mob.push_back(m);
    gens.emplace_back(mobius::to_lorentz3(m));
  }
  GroupPresentation out(g.kind(), 2, std::move(gens), std::move(mob), g.name() + "-conjugate");
  out.set_heuristic(g.heuristic());
  out.set_trace_parameters(g.trace_parameters());
  return out;
}

// ---------------------------------------------------------------- word balls

Eigen::Map<const hyp::Vec> WordBall::orbit_lorentz(std::size_t i) const {
  const std::size_t d = static_cast<std::size_t>(n_ + 2);
  return Eigen::Map<const hyp::Vec>(orbit_.data() + i * d, static_cast<Eigen::Index>(d));
}

hyp::InteriorPoint WordBall::orbit_point(std::size_t i) const { return hyp::InteriorPoint(orbit_lorentz(i)); }

hyp::Isometry WordBall::element(std::size_t i) const {
  if (matrices_.empty()) throw Error("WordBall: elements were not stored");
  const Eigen::Index d = n_ + 2;
  const std::size_t stride = static_cast<std::size_t>(d * d);
  return hyp::Isometry::trusted(Eigen::Map<const hyp::Mat>(matrices_.data() + i * stride, d, d));
}

std::optional<std::size_t> WordBall::index_of(const Word& w) const {
  if (!index_) throw Error("WordBall: index not built");
  auto it = index_->find(w);
  if (it == index_->end()) return std::nullopt;
  return it->second;
}

WordBall enumerate_ball(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0,
                        const EnumerationOptions& options) {
  if (max_length < 0) throw Error("enumerate_ball: L must be nonnegative");
  if (x0.n() != g.n()) throw DimensionMismatch("enumerate_ball: basepoint dimension differs from group");
  const int letters = 2 * g.rank();
  // Free-group word count; an upper bound for everything else.
  double predicted = 1.0, shell = 1.0;
  for (int l = 1; l <= max_length; ++l) {
    shell *= (l == 1 ? letters : letters - 1);
    predicted += shell;
  }
  if (predicted > static_cast<double>(options.max_elements)) {
    throw Error("enumerate_ball: word count " + std::to_string(static_cast<long long>(predicted)) +
                " exceeds the configured cap max_elements = " + std::to_string(options.max_elements));
  }

  WordBall ball(g.n(), max_length, x0);
  const int d = g.n() + 2;
  const auto reserve = static_cast<std::size_t>(predicted);
  ball.words_.reserve(reserve);
  ball.orbit_.reserve(reserve * static_cast<std::size_t>(d));
  ball.displacement_.reserve(reserve);
  if (options.store_elements) ball.matrices_.reserve(reserve * static_cast<std::size_t>(d * d));

  // Duplicate detection: bucket ball coordinates on a fine grid and compare
  // candidates by relative matrix (or orbit-vector) distance.
  constexpr double kCell = 1e-10;
  constexpr double kMargin = 1e-12;
  std::unordered_multimap<std::uint64_t, std::uint32_t> buckets;
  buckets.reserve(reserve);

  auto cell_keys = [&](const hyp::Vec& y, std::vector<std::uint64_t>& keys) {
    keys.clear();
    const hyp::Vec b = y.tail(d - 1) / (y(0) + 1.0);
    std::vector<std::int64_t> base(static_cast<std::size_t>(d - 1));
    std::vector<int> alt(static_cast<std::size_t>(d - 1), 0);
    for (int k = 0; k < d - 1; ++k) {
      const double s = b(k) / kCell;
      const double fl = std::floor(s);
      base[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(fl);
      const double frac = s - fl;
      if (frac < kMargin / kCell) alt[static_cast<std::size_t>(k)] = -1;
      if (frac > 1.0 - kMargin / kCell) alt[static_cast<std::size_t>(k)] = 1;
    }
    const int combos = 1 << (d - 1);
    for (int mask = 0; mask < combos; ++mask) {
      bool ok = true;
      std::uint64_t h = 1469598103934665603ULL;
      for (int k = 0; k < d - 1; ++k) {
        std::int64_t v = base[static_cast<std::size_t>(k)];
        if (mask & (1 << k)) {
          if (alt[static_cast<std::size_t>(k)] == 0) {
            ok = false;
            break;
          }
          v += alt[static_cast<std::size_t>(k)];
        }
        h = mix(h, v);
      }
      if (ok) keys.push_back(h);
    }
  };

  const hyp::Vec x0v = x0.lorentz();
  std::vector<std::uint64_t> keys;
  auto try_insert = [&](Word w, const hyp::Vec& y, const hyp::Mat* m) -> bool {
    cell_keys(y, keys);
    const double ynorm = y.norm();
    for (std::uint64_t key : keys) {
      auto [lo, hi] = buckets.equal_range(key);
      for (auto it = lo; it != hi; ++it) {
        const std::size_t j = it->second;
        bool same;
        if (m) {
          const Eigen::Map<const hyp::Mat> mj(ball.matrices_.data() + j * static_cast<std::size_t>(d * d), d, d);
          same = (mj - *m).norm() <= options.dedup_tolerance * m->norm();
        } else {
          same = (ball.orbit_lorentz(j) - y).norm() <= options.dedup_tolerance * ynorm;
        }
        if (same) {
          ++ball.duplicates_removed_;
          return false;
        }
      }
    }
    const auto idx = static_cast<std::uint32_t>(ball.words_.size());
    buckets.emplace(keys.front(), idx);
    ball.words_.push_back(std::move(w));
    for (int k = 0; k < d; ++k) ball.orbit_.push_back(y(k));
    ball.displacement_.push_back(ball.words_.size() == 1 ? 0.0 : displacement_of(x0v, y));
    if (m) ball.matrices_.insert(ball.matrices_.end(), m->data(), m->data() + d * d);
    return true;
  };

  const hyp::Mat eye = hyp::Mat::Identity(d, d);
  try_insert(Word{}, x0v, options.store_elements ? &eye : nullptr);
  std::size_t shell_begin = 0, shell_end = 1;
  for (int l = 1; l <= max_length; ++l) {
    for (std::size_t parent = shell_begin; parent < shell_end; ++parent) {
      const Word pw = ball.words_[parent];
      const char last = pw.empty() ? '\0' : pw.back();
      const hyp::Vec py = ball.orbit_lorentz(parent);
      hyp::Mat pm;
      if (options.store_elements) {
        pm = Eigen::Map<const hyp::Mat>(ball.matrices_.data() + parent * static_cast<std::size_t>(d * d), d, d);
      }
      for (int r = 0; r < letters; ++r) {
        const char c = letter_from_rank(r);
        if (last != '\0' && c == letter_inverse(last)) continue;
        const hyp::Mat& lm = g.letter_matrix(c);
        const hyp::Vec y = lm * py;
        if (options.store_elements) {
          const hyp::Mat m = lm * pm;
          try_insert(pw + c, y, &m);
        } else {
          try_insert(pw + c, y, nullptr);
        }
        if (ball.words_.size() > options.max_elements) {
          throw Error("enumerate_ball: element count exceeds the configured cap max_elements = " +
                      std::to_string(options.max_elements));
        }
      }
    }
    shell_begin = shell_end;
    shell_end = ball.words_.size();
  }

  auto index = std::make_shared<std::unordered_map<Word, std::size_t>>();
  index->reserve(ball.words_.size());
  for (std::size_t i = 0; i < ball.words_.size(); ++i) index->emplace(ball.words_[i], i);
  ball.index_ = std::move(index);
  return ball;
}

void for_each_word(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0,
                   const std::function<void(const Word&, const hyp::Vec&)>& visit) {
  const int letters = 2 * g.rank();
  std::vector<const hyp::Mat*> mats(static_cast<std::size_t>(letters));
  for (int r = 0; r < letters; ++r) mats[static_cast<std::size_t>(r)] = &g.letter_matrix(letter_from_rank(r));
  Word w;
  std::vector<hyp::Vec> stack(static_cast<std::size_t>(max_length + 1));
  stack[0] = x0.lorentz();
  // Iterative DFS: next[l] is the next letter rank to try at depth l.
  std::vector<int> next(static_cast<std::size_t>(max_length + 1), 0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == max_length || next[static_cast<std::size_t>(depth)] >= letters) {
      next[static_cast<std::size_t>(depth)] = 0;
      --depth;
      if (depth >= 0) w.pop_back();
      continue;
    }
    const int r = next[static_cast<std::size_t>(depth)]++;
    const char c = letter_from_rank(r);
    if (!w.empty() && c == letter_inverse(w.back())) continue;
    w.push_back(c);
    stack[static_cast<std::size_t>(depth + 1)].noalias() = *mats[static_cast<std::size_t>(r)] * stack[static_cast<std::size_t>(depth)];
    ++depth;
    visit(w, stack[static_cast<std::size_t>(depth)]);
  }
}

BoundaryCloud limit_set_sample(const GroupPresentation& g, int L, const hyp::InteriorPoint& x0, std::size_t max_points) {
  if (L < 2) throw Error("limit_set_sample: L must be at least 2");
  const int letters = 2 * g.rank();
  const double predicted = letters * std::pow(letters - 1, L - 1);
  if (predicted > static_cast<double>(max_points)) {
    throw Error("limit_set_sample: point count exceeds the configured cap max_points = " + std::to_string(max_points));
  }
  BoundaryCloud cloud;
  cloud.n = g.n();
  for_each_word(g, L, x0, [&](const Word& w, const hyp::Vec& y) {
    if (static_cast<int>(w.size()) != L) return;
    const hyp::Vec s = y.tail(y.size() - 1);
    cloud.points.push_back(s / s.norm());
    cloud.words.push_back(w);
  });
  return cloud;
}

std::size_t for_each_in_radius(const GroupPresentation& g, double radius, double slack, const hyp::InteriorPoint& x0,
                        const std::function<void(const Word&, double)>& visit, std::size_t max_nodes) {
  const int letters = 2 * g.rank();
  const hyp::Vec x0v = x0.lorentz();
  const double bound = radius + slack;
  std::vector<const hyp::Mat*> mats(static_cast<std::size_t>(letters));
  for (int r = 0; r < letters; ++r) mats[static_cast<std::size_t>(r)] = &g.letter_matrix(letter_from_rank(r));
  Word w;
  std::vector<hyp::Vec> stack{x0v};
  std::vector<int> next{0};
  std::size_t nodes = 0;
  while (!next.empty()) {
    const std::size_t depth = next.size() - 1;
    if (next[depth] >= letters) {
      next.pop_back();
      stack.pop_back();
      if (!w.empty()) w.pop_back();
      continue;
    }
    const int r = next[depth]++;
    const char c = letter_from_rank(r);
    if (!w.empty() && c == letter_inverse(w.back())) continue;
    hyp::Vec y = *mats[static_cast<std::size_t>(r)] * stack[depth];
    const double d = displacement_of(x0v, y);
    if (++nodes > max_nodes) {
      throw Error("for_each_in_radius: node count exceeds the configured cap max_nodes = " + std::to_string(max_nodes));
    }
    if (!(d <= bound)) continue;
    w.push_back(c);
    if (d <= radius) visit(w, d);
    stack.push_back(std::move(y));
    next.push_back(0);
  }
  return nodes;
}

CriticalExponentEstimate estimate_delta(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0,
                                        const DeltaOptions& options) {
  if (max_length < 1) throw Error("estimate_delta: L_max must be positive");
  const int letters = 2 * g.rank();
  double predicted = 1.0, shell = 1.0;
  for (int l = 1; l <= max_length; ++l) {
    shell *= (l == 1 ? letters : letters - 1);
    predicted += shell;
  }
  if (predicted > static_cast<double>(options.max_elements)) {
    throw Error("estimate_delta: word count exceeds max_elements = " + std::to_string(options.max_elements));
  }
  // The element floor only makes sense for nonelementary groups; a cyclic
  // group has 2L + 1 elements and its orbit overflows long before 10^3.
  if (g.rank() >= 2 && predicted < static_cast<double>(options.min_elements)) {
    throw NumericError("estimate_delta: only " + std::to_string(static_cast<long long>(predicted)) +
                       " elements; increase L_max so that at least " + std::to_string(options.min_elements) + " exist");
  }
  const hyp::Vec x0v = x0.lorentz();
  std::vector<double> outer;
  for_each_word(g, max_length, x0, [&](const Word& w, const hyp::Vec& y) {
    if (static_cast<int>(w.size()) == max_length) outer.push_back(displacement_of(x0v, y));
  });
  if (std::any_of(outer.begin(), outer.end(), [](double v) { return !std::isfinite(v); })) {
    throw NumericError("estimate_delta: orbit overflowed double range; reduce L_max");
  }
  std::sort(outer.begin(), outer.end());
  const auto qi = static_cast<std::size_t>(std::floor(options.completeness_quantile * static_cast<double>(outer.size() - 1)));
  const double r_hi = outer[std::min(qi, outer.size() - 1)];
  const double r_lo = options.fit_start_fraction * r_hi;
  if (!(r_hi > r_lo) || !(r_lo > 0.0)) throw NumericError("estimate_delta: degenerate fit window");

  std::vector<double> disp{0.0};
  const std::size_t nodes = for_each_in_radius(
      g, r_hi, options.prune_slack, x0,
      [&](const Word&, double d) {
        disp.push_back(d);
        if (disp.size() > options.max_elements) {
          throw Error("estimate_delta: orbit count exceeds max_elements = " + std::to_string(options.max_elements));
        }
      },
      options.max_nodes);
  std::sort(disp.begin(), disp.end());

  CriticalExponentEstimate est;
  est.max_length = max_length;
  est.elements = disp.size();
  est.nodes_visited = nodes;
  est.radius_lo = r_lo;
  est.radius_hi = r_hi;
  const int m = std::max(options.fit_points, 3);
  for (int i = 0; i < m; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / (m - 1);
    const auto count = static_cast<double>(std::upper_bound(disp.begin(), disp.end(), r) - disp.begin());
    est.radii.push_back(r);
    est.counts.push_back(count);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = est.radii[static_cast<std::size_t>(i)], y = std::log(est.counts[static_cast<std::size_t>(i)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double ss = 0;
  for (int i = 0; i < m; ++i) {
    const double r = std::log(est.counts[static_cast<std::size_t>(i)]) - (intercept + slope * est.radii[static_cast<std::size_t>(i)]);
    ss += r * r;
  }
  est.raw_slope = slope;
  est.residual = std::sqrt(ss / m);
  est.value = std::clamp(slope, 0.0, static_cast<double>(g.n()));
  return est;
}

std::vector<double> geometric_scales(double coarse, double fine, int count) {
  if (count < 2 || !(coarse > fine) || !(fine > 0.0)) throw Error("geometric_scales: need coarse > fine > 0 and count >= 2");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(coarse * std::pow(fine / coarse, static_cast<double>(i) / (count - 1)));
  return out;
}

BoxDimensionResult box_dimension(const BoundaryCloud& cloud, const std::vector<double>& scales) {
  if (cloud.points.size() < 1000) throw Error("box_dimension: need at least 1000 points");
  if (scales.size() < 3) throw Error("box_dimension: degenerate scale list (need at least 3 scales)");
  const auto [mn, mx] = std::minmax_element(scales.begin(), scales.end());
  if (!(*mn > 0.0) || std::log10(*mx / *mn) < 1.5) {
    throw Error("box_dimension: degenerate scale list (scales must be positive and span at least 1.5 decades)");
  }
  BoxDimensionResult res;
  res.scales = scales;
  for (double eps : scales) {
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
      std::uint64_t h = 1469598103934665603ULL;
      for (Eigen::Index k = 0; k < p.size(); ++k) h = mix(h, static_cast<std::int64_t>(std::floor(p(k) / eps)));
      cells.insert(h);
    }
    res.counts.push_back(static_cast<double>(cells.size()));
  }
  const auto m = static_cast<double>(scales.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double x = std::log(1.0 / scales[i]), y = std::log(res.counts[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  res.value = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - res.value * sx) / m;
  double ss = 0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double r = std::log(res.counts[i]) - (intercept + res.value * std::log(1.0 / scales[i]));
    ss += r * r;
  }
  res.residual = std::sqrt(ss / m);
  return res;
}

// ---------------------------------------------------------- conjugacies

BoundaryConjugacy::BoundaryConjugacy(std::vector<ConjugacySample> samples, std::vector<Word> skipped, int target_n)
    : samples_(std::move(samples)), skipped_(std::move(skipped)), target_n_(target_n) {
  if (samples_.size() < 2) throw Error("BoundaryConjugacy: need at least two samples");
}

hyp::Vec BoundaryConjugacy::operator()(double theta) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0) theta += two_pi;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), theta,
                             [](double t, const ConjugacySample& s) { return t < s.source_angle; });
  const ConjugacySample* hi;
  const ConjugacySample* lo;
  double lo_angle, hi_angle;
  if (it == samples_.begin() || it == samples_.end()) {
    lo = &samples_.back();
    hi = &samples_.front();
    lo_angle = lo->source_angle - (it == samples_.begin() ? two_pi : 0.0);
    hi_angle = hi->source_angle + (it == samples_.end() ? two_pi : 0.0);
  } else {
    hi = &*it;
    lo = &*(it - 1);
    lo_angle = lo->source_angle;
    hi_angle = hi->source_angle;
  }
  const double span = hi_angle - lo_angle;
  const double t = span > 0 ? (theta - lo_angle) / span : 0.0;
  hyp::Vec p = (1.0 - t) * lo->target + t * hi->target;
  const double r = p.norm();
  return r > 0 ? hyp::Vec(p / r) : lo->target;
}

double BoundaryConjugacy::max_gap() const {
  double gap = samples_.front().source_angle + 2.0 * std::numbers::pi - samples_.back().source_angle;
  for (std::size_t i = 1; i < samples_.size(); ++i) gap = std::max(gap, samples_[i].source_angle - samples_[i - 1].source_angle);
  return gap;
}

BoundaryConjugacy boundary_conjugacy(const GroupPresentation& fuchsian, const GroupPresentation& deformed, int max_length) {
  if (!fuchsian.has_mobius() || !deformed.has_mobius()) throw Error("boundary_conjugacy: both groups need Mobius generators");
  if (fuchsian.rank() != deformed.rank()) throw Error("boundary_conjugacy: groups have different rank");
  std::vector<ConjugacySample> samples;
  std::vector<Word> skipped;
  const int tn = deformed.n();
  for_each_word(fuchsian, max_length, hyp::InteriorPoint::origin(fuchsian.n()), [&](const Word& w, const hyp::Vec&) {
    const Mobius ms = fuchsian.mobius_element(w);
    const Mobius mt = deformed.mobius_element(w);
    if (!ms.is_loxodromic() || !mt.is_loxodromic()) {
      skipped.push_back(w);
      return;
    }
    const auto zs = ms.attracting_fixed_point();
    const auto zt = mt.attracting_fixed_point();
    if (!zs || !zt) {
      skipped.push_back(w);
      return;
    }
    if (std::abs(std::abs(*zs) - 1.0) > 1e-6) {
      throw Error("boundary_conjugacy: source group does not preserve the unit circle (word " + w + ")");
    }
    ConjugacySample s;
    s.source_angle = std::arg(*zs);
    if (s.source_angle < 0) s.source_angle += 2.0 * std::numbers::pi;
    s.source = hyp::Vec(2);
    s.source << std::cos(s.source_angle), std::sin(s.source_angle);
    if (tn == 1) {
      s.target = hyp::Vec(2);
      s.target << zt->real(), zt->imag();
      s.target.normalize();
    } else {
      s.target = mobius::stereographic(*zt);
    }
    s.word = w;
    samples.push_back(std::move(s));
  });
  std::stable_sort(samples.begin(), samples.end(),
                   [](const ConjugacySample& a, const ConjugacySample& b) { return a.source_angle < b.source_angle; });
  std::vector<ConjugacySample> unique;
  for (auto& s : samples) {
    if (!unique.empty() && s.source_angle - unique.back().source_angle < 1e-12) continue;
    unique.push_back(std::move(s));
  }
  return BoundaryConjugacy(std::move(unique), std::move(skipped), tn);
}

hyp::BoundaryPoint attracting_fixed_point(const hyp::Isometry& g, int max_iterations) {
  const int d = g.n() + 2;
  hyp::Vec v = hyp::Vec::Zero(d);
  v(0) = 1.0;
  for (int k = 1; k < d; ++k) v(k) = 0.3 / k;  // generic starting direction
  v.tail(d - 1) *= 1.0 / v.tail(d - 1).norm();
  hyp::Vec prev = v.tail(d - 1);
  for (int it = 0; it < max_iterations; ++it) {
    v = g.matrix() * v;
    v /= v(0);
    const hyp::Vec cur = v.tail(d - 1) / v.tail(d - 1).norm();
    if ((cur - prev).norm() < 1e-15) break;
    prev = cur;
  }
  return hyp::BoundaryPoint(v.tail(d - 1));
}

double shortest_displacement(const GroupPresentation& g, int max_length, const hyp::InteriorPoint& x0) {
  const hyp::Vec x0v = x0.lorentz();
  double best = std::numeric_limits<double>::infinity();
  for_each_word(g, max_length, x0, [&](const Word&, const hyp::Vec& y) { best = std::min(best, displacement_of(x0v, y)); });
  return best;
}

}  // namespace limitlab::groups

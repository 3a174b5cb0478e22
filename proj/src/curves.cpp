#include "curvekit/curves.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "curvekit/rng.hpp"

namespace curvekit {

namespace {

long long mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

Letter letter_for_out_half(int h) { return (h & 1) ? -(h / 2 + 1) : (h / 2 + 1); }

void check_budget(std::size_t n) {
  if (n > kMaxCrossingEvents)
    throw BudgetError("curve diagram exceeds " + std::to_string(kMaxCrossingEvents) + " crossing events");
}

// A strand read outward from a vertex: forward from `start` or backward
// from `start` (letters inverted).
struct Path {
  const Word* w;
  long long start;
  int dir;
  Letter at(long long k) const {
    const long long n = static_cast<long long>(w->size());
    const Letter l = (*w)[mod(start + dir * k, n)];
    return dir > 0 ? l : -l;
  }
};

// Whether y lies to the left of x, for two strands leaving a vertex through
// the same half-edge. nullopt when they never separate (same line).
std::optional<bool> left_of(const PolygonModel& m, const Path& x, const Path& y, long long bound) {
  for (long long d = 1; d <= bound; ++d) {
    const Letter lx = x.at(d), ly = y.at(d);
    if (lx != ly) return m.ccw_between(out_half(lx), out_half(ly), in_half(x.at(d - 1)));
  }
  return std::nullopt;
}

struct Crossing {
  long long i;          // vertex of b between b[i-1] and b[i]
  long long t;          // vertex of a between a[t-1] and a[t]
  bool head_left;       // a, read forward, exits to the left of b
  int left_half;        // half-edge holding a's left endpoint
  bool left_is_head;
};

// Crossings of b with the lifts of a, each placed at the first vertex (along
// b) of the segment the two share. With same_curve the identical strand is
// skipped, so every self-crossing shows up twice.
std::vector<Crossing> crossings(const PolygonModel& m, const Word& b, const Word& a, bool same_curve) {
  std::vector<Crossing> out;
  const long long nb = static_cast<long long>(b.size()), na = static_cast<long long>(a.size());
  if (nb == 0 || na == 0) return out;
  const long long bound = na + nb + 2;
  for (long long i = 0; i < nb; ++i) {
    const int p1 = in_half(b[mod(i - 1, nb)]);
    const int p2 = out_half(b[i]);
    for (long long t = 0; t < na; ++t) {
      if (same_curve && t == i) continue;
      const int tail = in_half(a[mod(t - 1, na)]);
      const int head = out_half(a[t]);
      if (tail == p1 || head == p1) continue;
      bool tail_left, head_left;
      if (tail == p2 || head == p2) {
        const Path pb{&b, i, +1};
        const Path pa = head == p2 ? Path{&a, t, +1} : Path{&a, t - 1, -1};
        const auto band_left = left_of(m, pb, pa, bound);
        if (!band_left) continue;
        const int other = head == p2 ? tail : head;
        const bool other_left = m.ccw_between(p2, other, p1);
        if (*band_left == other_left) continue;
        head_left = head == p2 ? *band_left : other_left;
        tail_left = !head_left;
      } else {
        tail_left = m.ccw_between(p2, tail, p1);
        head_left = m.ccw_between(p2, head, p1);
        if (tail_left == head_left) continue;
      }
      out.push_back({i, t, head_left, head_left ? head : tail, head_left});
      (void)tail_left;
    }
  }
  return out;
}

void require_supported(const PolygonModel& m) {
  if (!m.supports_intersection())
    throw std::invalid_argument("intersection numbers are not supported on closed surfaces of genus >= 2");
}

Word rotation(const Word& w, long long start) {
  Word r(w.size());
  const long long n = static_cast<long long>(w.size());
  for (long long k = 0; k < n; ++k) r[k] = w[mod(start + k, n)];
  return r;
}

bool is_rotation(const Word& w, const Word& u) {
  if (w.size() != u.size()) return false;
  if (w.empty()) return true;
  Word doubled(u);
  doubled.insert(doubled.end(), u.begin(), u.end());
  return std::search(doubled.begin(), doubled.end(), w.begin(), w.end()) != doubled.end();
}

Word min_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word r = rotation(w, static_cast<long long>(s));
    if (r < best) best = std::move(r);
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------- model

bool PolygonModel::ccw_between(int a, int x, int b) const {
  const int n = side_count();
  const int pa = pos_[a];
  const int dx = static_cast<int>(mod(pos_[x] - pa, n)), db = static_cast<int>(mod(pos_[b] - pa, n));
  return dx > 0 && dx < db;
}

std::string PolygonModel::descriptor() const { return std::to_string(genus_) + "," + std::to_string(punctures_); }

std::string PolygonModel::letter_name(Letter l) const {
  const int e = std::abs(l) - 1;
  return l > 0 ? names_.at(e) : names_.at(e) + "^-1";
}

Letter PolygonModel::parse_letter(const std::string& s) const {
  std::string base = s;
  bool inv = false;
  if (base.size() > 3 && base.compare(base.size() - 3, 3, "^-1") == 0) {
    base.resize(base.size() - 3);
    inv = true;
  }
  for (std::size_t e = 0; e < names_.size(); ++e)
    if (names_[e] == base) return inv ? -static_cast<Letter>(e + 1) : static_cast<Letter>(e + 1);
  throw std::invalid_argument("unknown side label '" + s + "' for surface " + descriptor());
}

ModelPtr make_model(const SurfaceSig& sig) {
  auto m = std::make_shared<PolygonModel>();
  const int g = sig.genus(), n = sig.punctures();
  if (g == 0 && n < 4) throw std::invalid_argument("surface " + sig.str() + " has an empty curve graph");
  m->genus_ = g;
  m->punctures_ = n;
  m->closed_ = n == 0;
  const int petals = n == 0 ? 0 : n - 1;
  // (1,0) uses the punctured square; the vertex is then a regular point.
  for (int i = 1; i <= g; ++i) {
    const int a = static_cast<int>(m->names_.size());
    m->names_.push_back("a" + std::to_string(i));
    m->names_.push_back("b" + std::to_string(i));
    const int b = a + 1;
    for (int h : {2 * a, 2 * b, 2 * a + 1, 2 * b + 1}) m->order_.push_back(h);
  }
  for (int i = 1; i <= petals; ++i) {
    const int c = static_cast<int>(m->names_.size());
    m->names_.push_back("c" + std::to_string(i));
    m->order_.push_back(2 * c);
    m->order_.push_back(2 * c + 1);
  }
  const int sides = static_cast<int>(m->order_.size());
  m->pos_.assign(sides, 0);
  for (int k = 0; k < sides; ++k) m->pos_[m->order_[k]] = k;
  std::vector<bool> seen(sides, false);
  for (int h0 = 0; h0 < sides; ++h0) {
    if (seen[h0]) continue;
    Word face;
    for (int h = h0; !seen[h]; h = m->order_[(m->pos_[h ^ 1] + 1) % sides]) {
      seen[h] = true;
      face.push_back(letter_for_out_half(h));
    }
    m->faces_.push_back(face);
  }
  if (static_cast<int>(m->faces_.size()) != std::max(n, 1))
    throw std::logic_error("make_model: face count does not match the puncture count");
  return m;
}

// ---------------------------------------------------------------- words

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l = -l;
  return r;
}

Word cyclic_reduce(Word w) {
  Word s;
  s.reserve(w.size());
  for (Letter l : w) {
    if (!s.empty() && s.back() == -l)
      s.pop_back();
    else
      s.push_back(l);
  }
  std::size_t lo = 0, hi = s.size();
  while (hi - lo >= 2 && s[lo] == -s[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(s.begin() + static_cast<long long>(lo), s.begin() + static_cast<long long>(hi));
}

Word cyclic_reduce_random(Word w, std::uint64_t seed) {
  SplitMix64 rng(seed);
  while (w.size() >= 2) {
    std::vector<std::size_t> spots;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] == -w[(k + 1) % w.size()]) spots.push_back(k);
    if (spots.empty()) break;
    const std::size_t k = spots[rng.below(spots.size())];
    const std::size_t k2 = (k + 1) % w.size();
    w.erase(w.begin() + static_cast<long long>(std::max(k, k2)));
    w.erase(w.begin() + static_cast<long long>(std::min(k, k2)));
  }
  return w;
}

// ---------------------------------------------------------------- curves

CurveDiagram::CurveDiagram(ModelPtr model, Word word) : model_(std::move(model)) {
  if (!model_) throw std::invalid_argument("curve diagram needs a model");
  check_budget(word.size());
  for (Letter l : word)
    if (l == 0 || std::abs(l) > model_->rank()) throw std::invalid_argument("letter out of range for model");
  word_ = cyclic_reduce(std::move(word));
}

std::vector<CurveDiagram::Event> CurveDiagram::events() const {
  const auto& m = *model_;
  const long long n = static_cast<long long>(word_.size());
  std::vector<Event> ev;
  ev.reserve(word_.size());
  for (long long t = 0; t < n; ++t) {
    const int e = std::abs(word_[t]) - 1;
    // Read every strand of band e outward from side (e,+).
    auto outward = [&](long long s) { return word_[s] > 0 ? Path{&word_, s, +1} : Path{&word_, s, -1}; };
    const Path me = outward(t);
    int rank = 0;
    for (long long s = 0; s < n; ++s) {
      if (s == t || std::abs(word_[s]) - 1 != e) continue;
      const auto left = left_of(m, outward(s), me, 2 * n + 2);
      if (left ? *left : s < t) ++rank;
    }
    ev.push_back({m.position(out_half(word_[t])), rank});
  }
  return ev;
}

Word CurveDiagram::canonical() const {
  Word a = min_rotation(word_), b = min_rotation(inverse(word_));
  return std::min(a, b);
}

std::string CurveDiagram::str() const {
  if (word_.empty()) return "1";
  std::string s;
  for (Letter l : word_) {
    if (!s.empty()) s += ' ';
    s += model_->letter_name(l);
  }
  return s;
}

bool CurveDiagram::operator==(const CurveDiagram& o) const {
  return *model_ == *o.model_ && canonical() == o.canonical();
}

CurveDiagram make_curve(ModelPtr model, const std::string& word) {
  Word w;
  std::string token;
  std::istringstream in(word);
  while (in >> token) {
    std::string part;
    std::istringstream split(token);
    while (std::getline(split, part, ','))
      if (!part.empty() && part != "1") w.push_back(model->parse_letter(part));
  }
  return CurveDiagram(std::move(model), std::move(w));
}

CurveDiagram make_torus_curve(ModelPtr torus, long long p, long long q) {
  if (torus->genus() != 1 || torus->rank() != 2) throw std::invalid_argument("make_torus_curve needs the (1,0) or (1,1) model");
  const long long ap = std::llabs(p), aq = std::llabs(q);
  if (std::gcd(ap, aq) != 1) throw std::invalid_argument("make_torus_curve: (p,q) must be coprime");
  check_budget(static_cast<std::size_t>(ap + aq));
  const Letter x = p >= 0 ? 1 : -1, y = q >= 0 ? 2 : -2;
  Word w;
  long long i = 1, j = 1;
  while (i <= ap || j <= aq) {
    // vertical crossing i at time i/|p|, horizontal j at time j/|q|
    if (j > aq || (i <= ap && i * aq <= j * ap)) {
      w.push_back(x);
      ++i;
    } else {
      w.push_back(y);
      ++j;
    }
  }
  return CurveDiagram(std::move(torus), std::move(w));
}

long long geometric_intersection(const CurveDiagram& a, const CurveDiagram& b) {
  if (!(*a.model() == *b.model())) throw std::invalid_argument("geometric_intersection: model mismatch");
  require_supported(*a.model());
  return static_cast<long long>(crossings(*a.model(), b.word(), a.word(), false).size());
}

long long self_intersection(const CurveDiagram& c) {
  require_supported(*c.model());
  const Word& w = c.word();
  const std::size_t n = w.size();
  // w = u^k: i(u^k) = k^2 i(u) + k - 1
  for (std::size_t period = 1; period < n; ++period) {
    if (n % period != 0) continue;
    bool periodic = true;
    for (std::size_t k = period; k < n && periodic; ++k) periodic = w[k] == w[k - period];
    if (!periodic) continue;
    const long long k = static_cast<long long>(n / period);
    const Word root(w.begin(), w.begin() + static_cast<long long>(period));
    const long long base = static_cast<long long>(crossings(*c.model(), root, root, true).size()) / 2;
    return k * k * base + k - 1;
  }
  return static_cast<long long>(crossings(*c.model(), w, w, true).size()) / 2;
}

CurveDiagram dehn_twist(const CurveDiagram& c, const CurveDiagram& along, long long power) {
  if (!(*c.model() == *along.model())) throw std::invalid_argument("dehn_twist: model mismatch");
  if (self_intersection(along) != 0) throw std::invalid_argument("dehn_twist: twisting curve is not embedded");
  if (power == 0 || along.empty()) return c;
  const auto& m = *c.model();
  const Word& b = c.word();
  const Word& a = along.word();
  auto xs = crossings(m, b, a, false);
  if (xs.empty()) return c;
  const long long copies = std::llabs(power);
  check_budget(b.size() + xs.size() * a.size() * static_cast<std::size_t>(copies));

  // Order of crossings along b at a single vertex: by the left endpoint of
  // each chord, walking clockwise from b's incoming half-edge.
  const long long nb = static_cast<long long>(b.size()), na = static_cast<long long>(a.size());
  auto left_path = [&](const Crossing& x) {
    return x.left_is_head ? Path{&a, x.t, +1} : Path{&a, x.t - 1, -1};
  };
  std::stable_sort(xs.begin(), xs.end(), [&](const Crossing& x, const Crossing& y) {
    if (x.i != y.i) return x.i < y.i;
    const int p1 = in_half(b[mod(x.i - 1, nb)]);
    const int n = m.side_count();
    const long long dx = mod(m.position(p1) - m.position(x.left_half), n);
    const long long dy = mod(m.position(p1) - m.position(y.left_half), n);
    if (dx != dy) return dx < dy;
    // same band: the strand further left is met first
    const auto left = left_of(m, left_path(x), left_path(y), 2 * na + 2);
    return left.has_value() && !*left;
  });

  Word out;
  std::size_t next = 0;
  for (long long i = 0; i < nb; ++i) {
    for (; next < xs.size() && xs[next].i == i; ++next) {
      const Crossing& x = xs[next];
      const bool forward = (power > 0) != x.head_left;
      const Word loop = forward ? rotation(a, x.t) : inverse(rotation(a, x.t));
      for (long long k = 0; k < copies; ++k) out.insert(out.end(), loop.begin(), loop.end());
    }
    out.push_back(b[i]);
  }
  return CurveDiagram(c.model(), std::move(out));
}

bool is_essential(const CurveDiagram& c) {
  if (self_intersection(c) != 0) throw std::invalid_argument("is_essential: curve is not embedded");
  if (c.empty()) return false;
  for (const Word& f : c.model()->peripheral_words()) {
    if (c.length() % f.size() != 0) continue;
    Word power;
    for (std::size_t k = 0; k < c.length() / f.size(); ++k) power.insert(power.end(), f.begin(), f.end());
    if (is_rotation(c.word(), power) || is_rotation(c.word(), inverse(power))) return false;
  }
  return true;
}

std::vector<long long> abelianization(const CurveDiagram& c) {
  std::vector<long long> v(static_cast<std::size_t>(c.model()->rank()), 0);
  for (Letter l : c.word()) v[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return v;
}

std::string diagram_to_json(const CurveDiagram& c) {
  nlohmann::json j;
  j["schema"] = 1;
  j["surface"] = {c.model()->genus(), c.model()->punctures()};
  auto word = nlohmann::json::array();
  for (Letter l : c.word()) word.push_back(c.model()->letter_name(l));
  j["word"] = word;
  auto events = nlohmann::json::array();
  for (const auto& e : c.events()) events.push_back({e.side, e.rank});
  j["events"] = events;
  return j.dump();
}

CurveDiagram diagram_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto model = make_model(SurfaceSig(j.at("surface").at(0).get<int>(), j.at("surface").at(1).get<int>()));
  Word w;
  for (const auto& l : j.at("word")) w.push_back(model->parse_letter(l.get<std::string>()));
  return CurveDiagram(model, std::move(w));
}

}  // namespace curvekit

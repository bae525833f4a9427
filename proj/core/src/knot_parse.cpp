#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "branchcover/errors.hpp"
#include "branchcover/knot.hpp"
#include "diagram_builder.hpp"

namespace branchcover::knot {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip_space();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  long long integer() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const char* start = begin;
    if (begin != end && *begin == '+') ++begin;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - start);
    return value;
  }
  std::size_t position() const noexcept { return pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

KnotDiagram parse_pd(std::string_view text) {
  Scanner sc(text);
  std::vector<std::array<int, 4>> tuples;
  const bool outer = sc.accept('[');
  if (!(outer && sc.accept(']'))) {
    while (true) {
      sc.accept_word("X");
      char close;
      if (sc.accept('(')) close = ')';
      else if (sc.accept('[')) close = ']';
      else sc.fail("expected a 4-tuple");
      std::array<int, 4> t{};
      for (int k = 0; k < 4; ++k) {
        if (k) sc.expect(',');
        const std::size_t at = sc.position();
        long long v = sc.integer();
        if (v < 1 || v > 1000000) throw ParseError("edge label must be a positive integer", at);
        t[static_cast<std::size_t>(k)] = static_cast<int>(v);
      }
      sc.expect(close);
      tuples.push_back(t);
      if (!sc.accept(',')) break;
    }
    if (outer) sc.expect(']');
  }
  if (!sc.at_end()) sc.fail("trailing input");
  return KnotDiagram::from_pd(tuples);
}

BraidWord parse_braid(std::string_view text) {
  Scanner sc(text);
  if (!sc.accept_word("strands")) sc.fail("expected 'strands=n'");
  sc.expect('=');
  const std::size_t at = sc.position();
  long long n = sc.integer();
  if (n < 1 || n > 10000) throw ParseError("strand count out of range", at);
  BraidWord b;
  b.strands = static_cast<int>(n);
  while (!sc.at_end()) {
    sc.accept(',');
    const std::size_t p = sc.position();
    long long l = sc.integer();
    if (l == 0 || std::llabs(l) >= n) throw ParseError("braid generator out of range", p);
    b.letters.push_back(static_cast<int>(l));
  }
  return b;
}

namespace {

// Rotation-system realisation of a DT code: crossing i pairs passage 2i+1 (odd) with an even passage.
// Half-edge positions at each crossing are counterclockwise; the even passage crosses the odd one
// either left-to-right or right-to-left, chosen so the resulting map is planar.
struct DtLayout {
  int n = 0;
  std::vector<int> crossing_of;  // passage (1..2n) -> crossing
  std::vector<bool> is_odd;      // passage -> odd passage at its crossing
  std::vector<int> flip;         // crossing -> 0 or 1

  // Position of a passage's incoming or outgoing half-edge.
  int position(int passage, bool incoming) const {
    const int c = crossing_of[static_cast<std::size_t>(passage)];
    if (is_odd[static_cast<std::size_t>(passage)]) return incoming ? 0 : 2;
    const bool in_first = flip[static_cast<std::size_t>(c)] == 0;
    return incoming == in_first ? 1 : 3;
  }
  int next(int passage) const { return passage % (2 * n) + 1; }

  int face_count() const {
    // Darts are (crossing, position); alpha follows an edge, sigma rotates counterclockwise.
    std::vector<int> alpha(static_cast<std::size_t>(4 * n));
    for (int t = 1; t <= 2 * n; ++t) {
      const int u = 4 * crossing_of[static_cast<std::size_t>(t)] + position(t, false);
      const int t2 = next(t);
      const int v = 4 * crossing_of[static_cast<std::size_t>(t2)] + position(t2, true);
      alpha[static_cast<std::size_t>(u)] = v;
      alpha[static_cast<std::size_t>(v)] = u;
    }
    std::vector<bool> seen(alpha.size(), false);
    int faces = 0;
    for (std::size_t d0 = 0; d0 < alpha.size(); ++d0) {
      if (seen[d0]) continue;
      ++faces;
      for (std::size_t d = d0; !seen[d];) {
        seen[d] = true;
        const std::size_t e = static_cast<std::size_t>(alpha[d]);
        d = (e / 4) * 4 + (e % 4 + 1) % 4;
      }
    }
    return faces;
  }
};

}  // namespace

KnotDiagram parse_dt(std::string_view text) {
  Scanner sc(text);
  std::vector<long long> code;
  std::vector<std::size_t> where;
  while (!sc.at_end()) {
    sc.accept(',');
    where.push_back(sc.position());
    code.push_back(sc.integer());
  }
  const int n = static_cast<int>(code.size());
  if (n == 0) return KnotDiagram::unknot();
  if (n > 24) throw ValidationError("DT codes above 24 crossings are not supported");
  std::vector<bool> used(static_cast<std::size_t>(2 * n + 1), false);
  for (std::size_t i = 0; i < code.size(); ++i) {
    const long long a = std::llabs(code[i]);
    if (a == 0 || a % 2 != 0) throw ParseError("DT entries must be nonzero even integers", where[i]);
    if (a > 2 * n || used[static_cast<std::size_t>(a)]) throw ValidationError("DT entries are not a permutation of 2..2n");
    used[static_cast<std::size_t>(a)] = true;
  }

  DtLayout layout;
  layout.n = n;
  layout.crossing_of.assign(static_cast<std::size_t>(2 * n + 1), 0);
  layout.is_odd.assign(static_cast<std::size_t>(2 * n + 1), false);
  for (int i = 0; i < n; ++i) {
    const int odd = 2 * i + 1, even = static_cast<int>(std::llabs(code[static_cast<std::size_t>(i)]));
    layout.crossing_of[static_cast<std::size_t>(odd)] = i;
    layout.crossing_of[static_cast<std::size_t>(even)] = i;
    layout.is_odd[static_cast<std::size_t>(odd)] = true;
  }
  bool planar = false;
  layout.flip.assign(static_cast<std::size_t>(n), 0);
  // The first crossing's orientation is fixed; its mirror gives the mirror embedding.
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n - 1)); ++bits) {
    for (int i = 1; i < n; ++i) layout.flip[static_cast<std::size_t>(i)] = static_cast<int>((bits >> (i - 1)) & 1);
    if (layout.face_count() == n + 2) {
      planar = true;
      break;
    }
  }
  if (!planar) throw ValidationError("DT code has no planar realisation");

  detail::DiagramBuilder b;
  std::vector<std::array<int, 4>> ports;
  for (int i = 0; i < n; ++i) {
    // Positions 0 and 2 carry the odd passage; a positive entry puts the odd passage over.
    const int under_parity = code[static_cast<std::size_t>(i)] > 0 ? 1 : 0;
    ports.push_back(b.add_crossing(under_parity));
  }
  for (int t = 1; t <= 2 * n; ++t) {
    const int t2 = layout.next(t);
    b.join(ports[static_cast<std::size_t>(layout.crossing_of[static_cast<std::size_t>(t)])]
                [static_cast<std::size_t>(layout.position(t, false))],
           ports[static_cast<std::size_t>(layout.crossing_of[static_cast<std::size_t>(t2)])]
                [static_cast<std::size_t>(layout.position(t2, true))]);
  }
  return b.finish();
}

}  // namespace branchcover::knot

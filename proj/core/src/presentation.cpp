#include "branchcover/presentation.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "branchcover/errors.hpp"

namespace branchcover::pres {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter) out.pop_back();
    else out.push_back(letter);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

std::int64_t exponent_sum(const Word& w, int generator) {
  std::int64_t s = 0;
  for (int letter : w) {
    if (letter == generator) ++s;
    else if (letter == -generator) --s;
  }
  return s;
}

GroupPresentation GroupPresentation::make(int generators, std::vector<Word> relators) {
  if (generators < 0) throw ValidationError("generator count must be nonnegative");
  GroupPresentation p;
  p.generators = generators;
  for (auto& r : relators) {
    for (int letter : r)
      if (letter == 0 || std::abs(letter) > generators)
        throw ValidationError("relator letter " + std::to_string(letter) + " out of range");
    Word reduced = cyclic_reduce(r);
    if (!reduced.empty()) p.relators.push_back(std::move(reduced));
  }
  return p;
}

namespace {

void skip_space(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

bool accept(std::string_view s, std::size_t& pos, std::string_view token) {
  skip_space(s, pos);
  if (s.substr(pos, token.size()) != token) return false;
  pos += token.size();
  return true;
}

int read_int(std::string_view s, std::size_t& pos) {
  skip_space(s, pos);
  const char* begin = s.data() + pos;
  int value = 0;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc() || ptr == begin) throw ParseError("expected an integer", pos);
  pos += static_cast<std::size_t>(ptr - begin);
  return value;
}

}  // namespace

GroupPresentation GroupPresentation::parse(std::string_view text) {
  std::size_t pos = 0;
  if (!accept(text, pos, "gens")) throw ParseError("expected 'gens='", pos);
  if (!accept(text, pos, "=")) throw ParseError("expected '='", pos);
  const int n = read_int(text, pos);
  std::vector<Word> relators;
  if (accept(text, pos, ";")) {
    if (!accept(text, pos, "rel")) throw ParseError("expected 'rel='", pos);
    if (!accept(text, pos, "=")) throw ParseError("expected '='", pos);
    Word current;
    while (true) {
      skip_space(text, pos);
      if (pos >= text.size()) break;
      if (text[pos] == ',') {
        relators.push_back(std::move(current));
        current.clear();
        ++pos;
        continue;
      }
      current.push_back(read_int(text, pos));
    }
    if (!current.empty() || !relators.empty()) relators.push_back(std::move(current));
  }
  skip_space(text, pos);
  if (pos != text.size()) throw ParseError("trailing input", pos);
  return make(n, std::move(relators));
}

std::string GroupPresentation::to_string() const {
  std::ostringstream os;
  os << "gens=" << generators << "; rel=";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    os << (r ? ", " : " ");
    for (std::size_t k = 0; k < relators[r].size(); ++k) os << (k ? " " : "") << relators[r][k];
  }
  return os.str();
}

GroupPresentation wirtinger(const knot::KnotDiagram& diagram) {
  const auto& arc = diagram.arc_of_edge();
  auto gen = [&](int edge) { return arc[static_cast<std::size_t>(edge - 1)] + 1; };
  std::vector<Word> relators;
  for (const auto& c : diagram.crossings()) {
    const int o = gen(c.over_in()), in = gen(c.under_in()), out = gen(c.under_out());
    if (c.sign > 0) relators.push_back({o, in, -o, -out});
    else relators.push_back({-o, in, o, -out});
  }
  if (!relators.empty()) relators.pop_back();
  return GroupPresentation::make(static_cast<int>(diagram.arc_count()), std::move(relators));
}

GroupPresentation orbifold_quotient(const GroupPresentation& p) {
  std::vector<Word> relators = p.relators;
  for (int g = 1; g <= p.generators; ++g) relators.push_back({g, g});
  return GroupPresentation::make(p.generators, std::move(relators));
}

exact::AbelianGroup abelianize(const GroupPresentation& p) {
  if (p.relators.empty()) return exact::AbelianGroup::from_diagonal({}, static_cast<std::size_t>(p.generators));
  exact::IntegerMatrix m(p.relators.size(), static_cast<std::size_t>(p.generators));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int letter : p.relators[r]) m(r, static_cast<std::size_t>(std::abs(letter) - 1)) += letter > 0 ? 1 : -1;
  return exact::smith_normal_form(m).cokernel;
}

}  // namespace branchcover::pres

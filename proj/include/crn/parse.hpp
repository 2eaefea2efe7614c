#ifndef CRN_PARSE_HPP
#define CRN_PARSE_HPP

#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "crn/errors.hpp"
#include "crn/network.hpp"

namespace crn {

// .crn grammar (line oriented):
//   species A B C            optional; fixes the species ordering
//   LHS -> RHS : rate        irreversible reaction
//   LHS <-> RHS : fwd, bwd   reversible pair, expanded to two reactions
// LHS/RHS are '+'-separated terms `coeff name` (coeff optional, default 1),
// or the single token `0` for the empty complex. `#` starts a comment.

namespace detail {

struct LineCursor {
  std::string_view text;
  int line = 0;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool consume(std::string_view tok) {
    skip_ws();
    if (text.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  std::optional<std::string> identifier() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    char c = text[pos];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) return std::nullopt;
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }

  std::optional<long long> integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) return std::nullopt;
    return std::stoll(std::string(text.substr(start, pos - start)));
  }

  double number() {
    skip_ws();
    if (pos >= text.size()) fail("expected a rate constant");
    const std::string rest(text.substr(pos));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("expected a rate constant");
    }
    pos += used;
    return value;
  }
};

}  // namespace detail

/// Parse `.crn` text into a validated mass-action system. Species order is
/// first appearance unless a `species` directive fixes it.
inline MassActionSystem parse_network(const std::string& text) {
  std::vector<std::string> species;
  std::map<std::string, int> species_index;
  bool have_directive = false;

  auto intern_species = [&](const std::string& name, detail::LineCursor& cur) {
    auto it = species_index.find(name);
    if (it != species_index.end()) return it->second;
    if (have_directive) {
      // Ordering was fixed explicitly; new names extend it in appearance order.
    }
    int idx = static_cast<int>(species.size());
    species.push_back(name);
    species_index.emplace(name, idx);
    (void)cur;
    return idx;
  };

  // First pass collects raw reactions as sparse complexes keyed by name.
  using SparseComplex = std::map<std::string, long long>;
  struct RawReaction {
    SparseComplex lhs, rhs;
    double rate;
    int line, column;
  };
  std::vector<RawReaction> raw;

  auto parse_side = [&](detail::LineCursor& cur) -> SparseComplex {
    SparseComplex side;
    if (cur.peek_is('0')) {
      std::size_t save = cur.pos;
      ++cur.pos;
      cur.skip_ws();
      bool end_of_side = cur.pos >= cur.text.size() || cur.text[cur.pos] == '-' ||
                         cur.text[cur.pos] == '<' || cur.text[cur.pos] == ':';
      if (end_of_side) return side;
      cur.pos = save;
    }
    while (true) {
      auto coeff = cur.integer();
      auto name = cur.identifier();
      if (!name) cur.fail("expected a species name");
      long long c = coeff.value_or(1);
      if (c <= 0) cur.fail("zero stoichiometric coefficient");
      side[*name] += c;
      if (!cur.consume("+")) break;
    }
    return side;
  };

  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    detail::LineCursor cur{line, line_no, 0};
    if (cur.done()) continue;

    std::size_t save = cur.pos;
    if (auto word = cur.identifier(); word && *word == "species") {
      have_directive = true;
      bool any = false;
      while (auto name = cur.identifier()) {
        if (species_index.count(*name)) cur.fail("species " + *name + " listed twice");
        species_index.emplace(*name, static_cast<int>(species.size()));
        species.push_back(*name);
        any = true;
      }
      if (!any) cur.fail("species directive lists no species");
      if (!cur.done()) cur.fail("unexpected text after species directive");
      continue;
    }
    cur.pos = save;

    RawReaction r;
    r.line = line_no;
    r.column = 1;
    r.lhs = parse_side(cur);
    bool reversible = false;
    if (cur.consume("<->")) {
      reversible = true;
    } else if (!cur.consume("->")) {
      cur.fail("expected '->' or '<->'");
    }
    r.rhs = parse_side(cur);
    if (!cur.consume(":")) cur.fail("expected ':' before the rate");
    cur.skip_ws();
    int rate_col = static_cast<int>(cur.pos) + 1;
    r.rate = cur.number();
    if (!(r.rate > 0.0) || !std::isfinite(r.rate)) {
      throw ParseError("non-positive rate constant", line_no, rate_col);
    }
    if (r.lhs == r.rhs) throw ParseError("self-loop reaction", line_no, 1);
    raw.push_back(r);
    if (reversible) {
      if (!cur.consume(",")) cur.fail("reversible reaction needs two rates");
      cur.skip_ws();
      rate_col = static_cast<int>(cur.pos) + 1;
      RawReaction back;
      back.line = line_no;
      back.column = rate_col;
      back.lhs = r.rhs;
      back.rhs = r.lhs;
      back.rate = cur.number();
      if (!(back.rate > 0.0) || !std::isfinite(back.rate)) {
        throw ParseError("non-positive rate constant", line_no, rate_col);
      }
      raw.push_back(back);
    }
    if (!cur.done()) cur.fail("unexpected trailing text");
    for (const auto& [name, c] : raw[raw.size() - (reversible ? 2 : 1)].lhs) {
      (void)c;
      detail::LineCursor dummy{line, line_no, 0};
      intern_species(name, dummy);
    }
    // Species on the right appear after those on the left of the same line.
    for (const auto& [name, c] : raw[raw.size() - (reversible ? 2 : 1)].rhs) {
      (void)c;
      detail::LineCursor dummy{line, line_no, 0};
      intern_species(name, dummy);
    }
  }

  if (raw.empty() && !have_directive) {
    throw ParseError("no reactions and no species directive", std::max(line_no, 1), 1);
  }

  const int n = static_cast<int>(species.size());
  auto densify = [&](const SparseComplex& sc) {
    Complex c(n, 0);
    for (const auto& [name, coeff] : sc) c[species_index.at(name)] = coeff;
    return c;
  };

  std::vector<Complex> complexes;
  std::map<Complex, int> complex_index;
  auto intern_complex = [&](const Complex& c) {
    auto it = complex_index.find(c);
    if (it != complex_index.end()) return it->second;
    int idx = static_cast<int>(complexes.size());
    complexes.push_back(c);
    complex_index.emplace(c, idx);
    return idx;
  };

  std::vector<Reaction> reactions;
  std::vector<double> rates;
  std::map<std::pair<int, int>, double> reaction_rate;
  for (const RawReaction& r : raw) {
    int src = intern_complex(densify(r.lhs));
    int tgt = intern_complex(densify(r.rhs));
    auto key = std::make_pair(src, tgt);
    auto it = reaction_rate.find(key);
    if (it != reaction_rate.end()) {
      if (it->second != r.rate) {
        throw ParseError("duplicate reaction with conflicting rate", r.line, r.column);
      }
      continue;  // identical duplicate, keep the first
    }
    reaction_rate.emplace(key, r.rate);
    reactions.push_back(Reaction{src, tgt});
    rates.push_back(r.rate);
  }

  ReactionNetwork net(std::move(species), std::move(complexes), std::move(reactions),
                      /*allow_isolated_species=*/have_directive);
  return MassActionSystem(std::move(net), std::move(rates));
}

namespace detail {

inline std::string format_rate(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

/// Render a complex in grammar form, e.g. "A + 2 B" or "0".
inline std::string complex_to_string(const ReactionNetwork& net, const Complex& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (c[i] != 1) out += std::to_string(c[i]) + " ";
    out += net.species_name(static_cast<int>(i));
  }
  return out.empty() ? "0" : out;
}

/// Serialize to `.crn` text, one reaction per line. Parsing the result yields
/// an identical system.
inline std::string serialize_network(const MassActionSystem& sys) {
  const ReactionNetwork& net = sys.network;
  std::string out = "species";
  for (const auto& s : net.species()) out += " " + s;
  out += "\n";
  for (int j = 0; j < net.reaction_count(); ++j) {
    out += complex_to_string(net, net.source_of(j)) + " -> " +
           complex_to_string(net, net.target_of(j)) + " : " +
           detail::format_rate(sys.rates[j]) + "\n";
  }
  return out;
}

}  // namespace crn

#endif  // CRN_PARSE_HPP

#ifndef CRN_NETWORK_HPP
#define CRN_NETWORK_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crn/errors.hpp"

namespace crn {

/// Species counts of a state in N^n, indexed by species position.
using State = std::vector<long long>;

/// Stoichiometric coefficients of a complex, one entry per species.
using Complex = std::vector<long long>;

/// Directed reaction between two complexes, stored as complex indices.
struct Reaction {
  int source = -1;
  int target = -1;

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

inline bool component_wise_geq(const State& x, const Complex& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return false;
  }
  return true;
}

/// A reaction network (X, C, R). Immutable after construction; the constructor
/// enforces the structural invariants:
///   - species names unique and non-empty,
///   - complexes distinct, non-negative, all of length n,
///   - no self-loop reactions, no duplicate reactions,
///   - every complex appears in some reaction,
///   - every species appears in some complex (unless explicitly waived for
///     networks declared through a `species` directive with no reactions).
class ReactionNetwork {
 public:
  ReactionNetwork() = default;

  ReactionNetwork(std::vector<std::string> species, std::vector<Complex> complexes,
                  std::vector<Reaction> reactions, bool allow_isolated_species = false)
      : species_(std::move(species)),
        complexes_(std::move(complexes)),
        reactions_(std::move(reactions)) {
    validate(allow_isolated_species);
  }

  int species_count() const { return static_cast<int>(species_.size()); }
  int complex_count() const { return static_cast<int>(complexes_.size()); }
  int reaction_count() const { return static_cast<int>(reactions_.size()); }

  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Complex>& complexes() const { return complexes_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }

  const std::string& species_name(int i) const { return species_[i]; }
  const Complex& complex(int i) const { return complexes_[i]; }
  const Reaction& reaction(int i) const { return reactions_[i]; }

  const Complex& source_of(int r) const { return complexes_[reactions_[r].source]; }
  const Complex& target_of(int r) const { return complexes_[reactions_[r].target]; }

  /// Net species change xi = target - source of reaction r.
  std::vector<long long> reaction_vector(int r) const {
    const Complex& s = source_of(r);
    const Complex& t = target_of(r);
    std::vector<long long> xi(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) xi[i] = t[i] - s[i];
    return xi;
  }

  std::optional<int> species_index(std::string_view name) const {
    for (std::size_t i = 0; i < species_.size(); ++i) {
      if (species_[i] == name) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  std::optional<int> complex_index(const Complex& c) const {
    for (std::size_t i = 0; i < complexes_.size(); ++i) {
      if (complexes_[i] == c) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  std::optional<int> reaction_index(int source, int target) const {
    for (std::size_t i = 0; i < reactions_.size(); ++i) {
      if (reactions_[i].source == source && reactions_[i].target == target) {
        return static_cast<int>(i);
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const ReactionNetwork& a, const ReactionNetwork& b) {
    return a.species_ == b.species_ && a.complexes_ == b.complexes_ &&
           a.reactions_ == b.reactions_;
  }

 private:
  void validate(bool allow_isolated_species) {
    const std::size_t n = species_.size();
    {
      std::vector<std::string> sorted = species_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("duplicate species name");
      }
      for (const auto& name : species_) {
        if (name.empty()) throw ValidationError("empty species name");
      }
    }
    {
      std::map<Complex, int> seen;
      for (std::size_t i = 0; i < complexes_.size(); ++i) {
        if (complexes_[i].size() != n) {
          throw ValidationError("complex length does not match species count");
        }
        for (long long c : complexes_[i]) {
          if (c < 0) throw ValidationError("negative stoichiometric coefficient");
        }
        if (!seen.emplace(complexes_[i], static_cast<int>(i)).second) {
          throw ValidationError("duplicate complex");
        }
      }
    }
    std::vector<char> complex_used(complexes_.size(), 0);
    {
      std::map<std::pair<int, int>, int> seen;
      for (const Reaction& r : reactions_) {
        if (r.source < 0 || r.source >= complex_count() || r.target < 0 ||
            r.target >= complex_count()) {
          throw ValidationError("reaction references unknown complex");
        }
        if (r.source == r.target) throw ValidationError("self-loop reaction");
        if (!seen.emplace(std::make_pair(r.source, r.target), 0).second) {
          throw ValidationError("duplicate reaction");
        }
        complex_used[r.source] = 1;
        complex_used[r.target] = 1;
      }
    }
    for (std::size_t i = 0; i < complexes_.size(); ++i) {
      if (!complex_used[i]) throw ValidationError("complex not used by any reaction");
    }
    if (!allow_isolated_species) {
      std::vector<char> species_used(n, 0);
      for (const Complex& c : complexes_) {
        for (std::size_t i = 0; i < n; ++i) {
          if (c[i] > 0) species_used[i] = 1;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!species_used[i]) {
          throw ValidationError("species " + species_[i] + " appears in no complex");
        }
      }
    }
  }

  std::vector<std::string> species_;
  std::vector<Complex> complexes_;
  std::vector<Reaction> reactions_;
};

/// A reaction network together with positive mass-action rate constants.
struct MassActionSystem {
  ReactionNetwork network;
  std::vector<double> rates;

  MassActionSystem() = default;

  MassActionSystem(ReactionNetwork net, std::vector<double> kappa)
      : network(std::move(net)), rates(std::move(kappa)) {
    if (static_cast<int>(rates.size()) != network.reaction_count()) {
      throw ValidationError("rate count does not match reaction count");
    }
    for (double k : rates) {
      if (!(k > 0.0)) throw ValidationError("non-positive rate constant");
    }
  }
};

/// Stoichiometric matrix: column j is target - source of reaction j (n x k).
inline std::vector<std::vector<long long>> stoichiometric_matrix(
    const ReactionNetwork& net) {
  const int n = net.species_count();
  const int k = net.reaction_count();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(k, 0));
  for (int j = 0; j < k; ++j) {
    auto xi = net.reaction_vector(j);
    for (int i = 0; i < n; ++i) m[i][j] = xi[i];
  }
  return m;
}

/// Stochastic mass-action rate kappa * x!/(x-y)! * 1{x >= y}.
/// The falling factorial is accumulated in integer arithmetic before the
/// single multiplication by kappa.
inline double rate_function(const MassActionSystem& sys, int reaction, const State& x) {
  const Complex& y = sys.network.source_of(reaction);
  if (!component_wise_geq(x, y)) return 0.0;
  unsigned __int128 prod = 1;
  bool big = false;
  long double prod_f = 1.0L;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (long long f = x[i]; f > x[i] - y[i]; --f) {
      if (!big) {
        unsigned __int128 next = prod * static_cast<unsigned __int128>(f);
        if (next / static_cast<unsigned __int128>(f) != prod) {
          big = true;
          prod_f = static_cast<long double>(prod);
        } else {
          prod = next;
          continue;
        }
      }
      prod_f *= static_cast<long double>(f);
    }
  }
  const long double ff = big ? prod_f : static_cast<long double>(prod);
  return static_cast<double>(static_cast<long double>(sys.rates[reaction]) * ff);
}

/// Deterministic mass-action rate kappa * z^y (with 0^0 = 1).
inline double deterministic_rate(const MassActionSystem& sys, int reaction,
                                 const std::vector<double>& z) {
  const Complex& y = sys.network.source_of(reaction);
  double val = sys.rates[reaction];
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (long long p = 0; p < y[i]; ++p) val *= z[i];
  }
  return val;
}

}  // namespace crn

#endif  // CRN_NETWORK_HPP

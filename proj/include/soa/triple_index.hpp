#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "soa/model.hpp"
#include "soa/rdf_parser.hpp"

namespace soa {

using TermId = std::uint32_t;

/// Bijective term <-> dense id mapping.
class TermDictionary {
 public:
  TermId intern(const Term& term);
  std::optional<TermId> find(const Term& term) const;
  const Term& term(TermId id) const { return terms_.at(id); }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> ids_;
};

struct IdTriple {
  TermId s, p, o;
  auto operator<=>(const IdTriple&) const = default;
};

struct LoadReport {
  long long read = 0;        // statements parsed
  long long duplicates = 0;  // collapsed by set semantics
  long long unique = 0;
};

/// Immutable in-memory statement set with SPO, POS and OSP orderings. Each
/// statement carries the graph it was first loaded from.
class TripleIndex {
 public:
  class Builder {
   public:
    void add(const Iri& s, const Iri& p, const Term& o, const std::optional<Iri>& graph);
    void add(const Quad& q) { add(q.subject, q.predicate, q.object, q.graph); }
    void add(const ParsedStatement& st) { add(st.subject, st.predicate, st.object, st.graph); }
    TripleIndex build(LoadReport* report = nullptr);

   private:
    TermDictionary dict_;
    std::vector<std::pair<IdTriple, TermId>> rows_;  // graph id or kNoGraph
  };

  static constexpr TermId kNoGraph = UINT32_MAX;

  std::size_t size() const noexcept { return spo_.size(); }
  const TermDictionary& dictionary() const noexcept { return dict_; }
  std::optional<TermId> id_of(const Term& t) const { return dict_.find(t); }
  const Term& term(TermId id) const { return dict_.term(id); }

  /// Calls `fn(IdTriple)` for every statement agreeing with the bound
  /// positions, using the ordering whose prefix covers them.
  template <typename Fn>
  void scan(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o, Fn&& fn) const;

  /// Number of statements matching the bound positions (exact).
  std::size_t count(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o) const;

  /// All statements in SPO order.
  std::span<const IdTriple> statements() const noexcept { return spo_; }
  std::optional<TermId> graph_of(std::size_t spo_position) const;

  Triple triple(const IdTriple& t) const;

 private:
  using Key = std::array<TermId, 3>;
  // Returns [begin, end) in `order` for a bound prefix of length n.
  static std::pair<std::size_t, std::size_t> prefix_range(const std::vector<Key>& order, const Key& key, int n);
  template <typename Fn>
  void scan_order(const std::vector<Key>& order, const Key& key, int n, int rot, std::optional<TermId> filter,
                  int filter_pos, Fn&& fn) const;

  TermDictionary dict_;
  std::vector<IdTriple> spo_;
  std::vector<Key> spo_keys_, pos_keys_, osp_keys_;
  std::vector<TermId> graphs_;  // aligned with spo_
};

/// Loads N-Triples/N-Quads/TriG/Turtle files (optionally gzipped). A
/// directory contributes its `*_part_*` files. Throws
/// Error("ParseFailure") naming the file and line of the first syntax error.
TripleIndex load(std::span<const std::filesystem::path> inputs, LoadReport* report = nullptr);

/// Expands directories into their sorted part files.
std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> inputs);

// ---- basic graph patterns ----

struct Variable {
  std::string name;
  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, Term>;

struct Pattern {
  PatternTerm s, p, o;
};

using Binding = std::map<std::string, Term>;

/// All solutions of the conjunction, distinct and sorted. Patterns are joined
/// most-bound first; a constant missing from the index yields no solutions.
std::vector<Binding> match(const TripleIndex& index, std::span<const Pattern> bgp);

/// Id-level variant used by the canned queries: returns the variable names
/// (sorted) and one row of term ids per solution.
struct Solutions {
  std::vector<std::string> variables;
  std::vector<std::vector<TermId>> rows;
  std::size_t column(const std::string& name) const;
};
Solutions match_ids(const TripleIndex& index, std::span<const Pattern> bgp);

inline PatternTerm var(std::string name) { return Variable{std::move(name)}; }

// ---- template definitions ----

template <typename Fn>
void TripleIndex::scan_order(const std::vector<Key>& order, const Key& key, int n, int rot,
                             std::optional<TermId> filter, int filter_pos, Fn&& fn) const {
  auto [b, e] = prefix_range(order, key, n);
  for (std::size_t i = b; i < e; ++i) {
    const Key& k = order[i];
    // Undo the rotation: rot 0 = (s,p,o), 1 = (p,o,s), 2 = (o,s,p).
    IdTriple t = rot == 0 ? IdTriple{k[0], k[1], k[2]} : rot == 1 ? IdTriple{k[2], k[0], k[1]} : IdTriple{k[1], k[2], k[0]};
    if (filter) {
      TermId v = filter_pos == 0 ? t.s : filter_pos == 1 ? t.p : t.o;
      if (v != *filter) continue;
    }
    fn(t);
  }
}

template <typename Fn>
void TripleIndex::scan(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o, Fn&& fn) const {
  if (s && p && o) {
    scan_order(spo_keys_, {*s, *p, *o}, 3, 0, std::nullopt, 0, fn);
  } else if (s && p) {
    scan_order(spo_keys_, {*s, *p, 0}, 2, 0, std::nullopt, 0, fn);
  } else if (p && o) {
    scan_order(pos_keys_, {*p, *o, 0}, 2, 1, std::nullopt, 0, fn);
  } else if (o && s) {
    scan_order(osp_keys_, {*o, *s, 0}, 2, 2, std::nullopt, 0, fn);
  } else if (s) {
    scan_order(spo_keys_, {*s, 0, 0}, 1, 0, std::nullopt, 0, fn);
  } else if (p) {
    scan_order(pos_keys_, {*p, 0, 0}, 1, 1, std::nullopt, 0, fn);
  } else if (o) {
    scan_order(osp_keys_, {*o, 0, 0}, 1, 2, std::nullopt, 0, fn);
  } else {
    scan_order(spo_keys_, {0, 0, 0}, 0, 0, std::nullopt, 0, fn);
  }
}

}  // namespace soa

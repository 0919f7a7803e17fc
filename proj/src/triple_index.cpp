#include "soa/triple_index.hpp"

#include <algorithm>
#include <limits>

#include "soa/rdf_writer.hpp"

namespace fs = std::filesystem;

namespace soa {

TermId TermDictionary::intern(const Term& term) {
  auto key = term_to_string(term);
  auto [it, inserted] = ids_.try_emplace(std::move(key), static_cast<TermId>(terms_.size()));
  if (inserted) {
    if (terms_.size() >= TripleIndex::kNoGraph) throw Error("CapacityExceeded", "too many distinct terms");
    terms_.push_back(term);
  }
  return it->second;
}

std::optional<TermId> TermDictionary::find(const Term& term) const {
  auto it = ids_.find(term_to_string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void TripleIndex::Builder::add(const Iri& s, const Iri& p, const Term& o, const std::optional<Iri>& graph) {
  IdTriple t{dict_.intern(s), dict_.intern(p), dict_.intern(o)};
  TermId g = graph ? dict_.intern(*graph) : kNoGraph;
  rows_.emplace_back(t, g);
}

TripleIndex TripleIndex::Builder::build(LoadReport* report) {
  // Stable: the first occurrence of a duplicate keeps its graph.
  std::stable_sort(rows_.begin(), rows_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  TripleIndex index;
  long long read = static_cast<long long>(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i > 0 && rows_[i].first == rows_[i - 1].first) continue;
    index.spo_.push_back(rows_[i].first);
    index.graphs_.push_back(rows_[i].second);
  }
  rows_.clear();
  rows_.shrink_to_fit();
  index.dict_ = std::move(dict_);
  dict_ = TermDictionary{};

  index.spo_keys_.reserve(index.spo_.size());
  index.pos_keys_.reserve(index.spo_.size());
  index.osp_keys_.reserve(index.spo_.size());
  for (const auto& t : index.spo_) {
    index.spo_keys_.push_back({t.s, t.p, t.o});
    index.pos_keys_.push_back({t.p, t.o, t.s});
    index.osp_keys_.push_back({t.o, t.s, t.p});
  }
  std::sort(index.pos_keys_.begin(), index.pos_keys_.end());
  std::sort(index.osp_keys_.begin(), index.osp_keys_.end());

  if (report) {
    report->read += read;
    report->unique = static_cast<long long>(index.spo_.size());
    report->duplicates = report->read - report->unique;
  }
  return index;
}

std::pair<std::size_t, std::size_t> TripleIndex::prefix_range(const std::vector<Key>& order, const Key& key, int n) {
  if (n == 0) return {0, order.size()};
  auto less = [n](const Key& a, const Key& b) {
    for (int i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  };
  auto [b, e] = std::equal_range(order.begin(), order.end(), key, less);
  return {static_cast<std::size_t>(b - order.begin()), static_cast<std::size_t>(e - order.begin())};
}

std::size_t TripleIndex::count(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o) const {
  std::pair<std::size_t, std::size_t> r;
  if (s && p && o) r = prefix_range(spo_keys_, {*s, *p, *o}, 3);
  else if (s && p) r = prefix_range(spo_keys_, {*s, *p, 0}, 2);
  else if (p && o) r = prefix_range(pos_keys_, {*p, *o, 0}, 2);
  else if (o && s) r = prefix_range(osp_keys_, {*o, *s, 0}, 2);
  else if (s) r = prefix_range(spo_keys_, {*s, 0, 0}, 1);
  else if (p) r = prefix_range(pos_keys_, {*p, 0, 0}, 1);
  else if (o) r = prefix_range(osp_keys_, {*o, 0, 0}, 1);
  else r = {0, spo_keys_.size()};
  return r.second - r.first;
}

std::optional<TermId> TripleIndex::graph_of(std::size_t spo_position) const {
  TermId g = graphs_.at(spo_position);
  if (g == kNoGraph) return std::nullopt;
  return g;
}

Triple TripleIndex::triple(const IdTriple& t) const {
  return Triple{std::get<Iri>(term(t.s)), std::get<Iri>(term(t.p)), term(t.o)};
}

std::vector<fs::path> expand_inputs(std::span<const fs::path> inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (!entry.is_regular_file()) continue;
        auto name = entry.path().filename().string();
        if (name.find("_part_") != std::string::npos && format_of_path(entry.path().string())) found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(in, ec)) {
      out.push_back(in);
    } else {
      throw Error("IoFailure", "no such input: " + in.string());
    }
  }
  return out;
}

TripleIndex load(std::span<const fs::path> inputs, LoadReport* report) {
  TripleIndex::Builder builder;
  for (const auto& file : expand_inputs(inputs)) {
    parse_file(
        file,
        [&](ParsedStatement&& st) {
          builder.add(st);
        },
        [&](const SyntaxError& e) {
          throw Error("ParseFailure", file.string() + ":" + std::to_string(e.line) + ": " + e.message);
        });
  }
  LoadReport local;
  auto index = builder.build(&local);
  if (report) *report = local;
  return index;
}

// ---- basic graph patterns ----

std::size_t Solutions::column(const std::string& name) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), name);
  if (it == variables.end() || *it != name) throw Error("UnknownVariable", name);
  return static_cast<std::size_t>(it - variables.begin());
}

namespace {

constexpr TermId kUnbound = std::numeric_limits<TermId>::max();

// A pattern position: a constant id, or a variable column.
struct Slot {
  bool is_var = false;
  TermId constant = 0;
  std::size_t column = 0;
};

struct CompiledPattern {
  std::array<Slot, 3> slots;
};

}  // namespace

Solutions match_ids(const TripleIndex& index, std::span<const Pattern> bgp) {
  Solutions out;
  for (const auto& p : bgp)
    for (const auto* t : {&p.s, &p.p, &p.o})
      if (auto* v = std::get_if<Variable>(t)) out.variables.push_back(v->name);
  std::sort(out.variables.begin(), out.variables.end());
  out.variables.erase(std::unique(out.variables.begin(), out.variables.end()), out.variables.end());

  std::vector<CompiledPattern> patterns;
  for (const auto& p : bgp) {
    CompiledPattern cp;
    const PatternTerm* terms[3] = {&p.s, &p.p, &p.o};
    for (int i = 0; i < 3; ++i) {
      if (auto* v = std::get_if<Variable>(terms[i])) {
        cp.slots[i] = Slot{true, 0, out.column(v->name)};
      } else {
        auto id = index.id_of(std::get<Term>(*terms[i]));
        if (!id) return out;  // unknown constant: no solutions
        cp.slots[i] = Slot{false, *id, 0};
      }
    }
    patterns.push_back(cp);
  }

  std::vector<std::vector<TermId>> rows{std::vector<TermId>(out.variables.size(), kUnbound)};
  std::vector<bool> bound(out.variables.size(), false);
  std::vector<bool> used(patterns.size(), false);

  for (std::size_t step = 0; step < patterns.size() && !rows.empty(); ++step) {
    // Most-bound first; ties broken by the constant-only selectivity.
    std::size_t best = patterns.size();
    int best_bound = -1;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (used[i]) continue;
      int nb = 0;
      std::optional<TermId> c[3];
      for (int k = 0; k < 3; ++k) {
        const auto& sl = patterns[i].slots[k];
        if (!sl.is_var) {
          c[k] = sl.constant;
          ++nb;
        } else if (bound[sl.column]) {
          ++nb;
        }
      }
      std::size_t cnt = index.count(c[0], c[1], c[2]);
      if (nb > best_bound || (nb == best_bound && cnt < best_count)) {
        best = i;
        best_bound = nb;
        best_count = cnt;
      }
    }
    used[best] = true;
    const auto& pat = patterns[best];

    std::vector<std::vector<TermId>> next;
    for (const auto& row : rows) {
      std::optional<TermId> q[3];
      for (int k = 0; k < 3; ++k) {
        const auto& sl = pat.slots[k];
        if (!sl.is_var) q[k] = sl.constant;
        else if (row[sl.column] != kUnbound) q[k] = row[sl.column];
      }
      index.scan(q[0], q[1], q[2], [&](const IdTriple& t) {
        std::vector<TermId> extended = row;
        const TermId vals[3] = {t.s, t.p, t.o};
        for (int k = 0; k < 3; ++k) {
          const auto& sl = pat.slots[k];
          if (!sl.is_var) continue;
          // A variable repeated within one pattern must agree with itself.
          if (extended[sl.column] != kUnbound && extended[sl.column] != vals[k]) return;
          extended[sl.column] = vals[k];
        }
        next.push_back(std::move(extended));
      });
    }
    for (const auto& sl : pat.slots)
      if (sl.is_var) bound[sl.column] = true;
    rows = std::move(next);
  }

  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  out.rows = std::move(rows);
  return out;
}

std::vector<Binding> match(const TripleIndex& index, std::span<const Pattern> bgp) {
  auto sol = match_ids(index, bgp);
  std::vector<Binding> out;
  out.reserve(sol.rows.size());
  for (const auto& row : sol.rows) {
    Binding b;
    for (std::size_t i = 0; i < sol.variables.size(); ++i) b.emplace(sol.variables[i], index.term(row[i]));
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace soa

#include "soa/normalize.hpp"

#include <algorithm>
#include <utility>

namespace soa {

InvertedText invert_abstract(const InvertedAbstract& index) {
  std::vector<std::pair<long long, const std::string*>> placed;
  for (const auto& [token, positions] : index)
    for (long long pos : positions) placed.emplace_back(pos, &token);
  std::sort(placed.begin(), placed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : *a.second < *b.second;
  });

  InvertedText out;
  for (std::size_t i = 0; i < placed.size(); ++i) {
    const auto& [pos, token] = placed[i];
    if (i > 0 && placed[i - 1].first == pos) {
      // Same token listed twice at one position is not a clash.
      if (*placed[i - 1].second != *token)
        out.duplicates.push_back({pos, *placed[i - 1].second, *token});
      placed[i].second = placed[i - 1].second;
      continue;
    }
    if (token->empty()) continue;
    if (!out.text.empty()) out.text += ' ';
    out.text += *token;
  }
  return out;
}

namespace {

bool is_removed_control(unsigned char c) {
  return (c <= 0x08) || (c >= 0x0B && c <= 0x1F && c != 0x0D) || c == 0x7F;
}

bool is_trim_space(char c) { return c == ' ' || c == '\t'; }

}  // namespace

std::string clean_literal(std::string_view raw, LiteralContext context) {
  std::string out;
  out.reserve(raw.size());
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (c == '\n' || c == '\r') {
      ch = ' ';
    } else if (is_removed_control(c)) {
      continue;
    } else if (ch == '\\' && context == LiteralContext::Url) {
      continue;
    }
    if (ch == ' ' && !out.empty() && out.back() == ' ') continue;
    out += ch;
  }
  auto first = std::find_if_not(out.begin(), out.end(), is_trim_space);
  auto last = std::find_if_not(out.rbegin(), out.rend(), is_trim_space).base();
  if (first >= last) return {};
  std::string trimmed(first, last);
  // Trimming tabs can expose a space run at the edge, e.g. "\t a".
  return trimmed == out ? out : clean_literal(trimmed, context);
}

std::variant<Iri, RejectedIri> validate_iri_candidate(std::string_view raw) {
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!raw.empty() && is_ws(raw.front())) raw.remove_prefix(1);
  while (!raw.empty() && is_ws(raw.back())) raw.remove_suffix(1);
  if (auto problem = check_iri(raw)) return RejectedIri{*problem};
  return Iri(std::string(raw));
}

}  // namespace soa

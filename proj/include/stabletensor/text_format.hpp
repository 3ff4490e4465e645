#pragma once

#include <cctype>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "partition.hpp"

namespace stabletensor {

using Json = nlohmann::ordered_json;

/// Parse the comma-separated partition text form; "" and "0" denote the
/// empty partition.
inline Partition parse_partition(const std::string& text) {
  std::vector<long long> parts;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw InputError("partition '" + text + "': empty component");
    std::size_t pos = 0;
    long long v;
    try {
      v = std::stoll(cur, &pos);
    } catch (const std::exception&) {
      throw InputError("partition '" + text + "': bad integer '" + cur + "'");
    }
    if (pos != cur.size()) throw InputError("partition '" + text + "': bad integer '" + cur + "'");
    parts.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (c == ' ') {
      continue;
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) flush();
  if (!text.empty() && cur.empty() && text.back() == ',')
    throw InputError("partition '" + text + "': trailing comma");
  return Partition(std::move(parts));
}

enum class OutputFormat { Json, Tsv, Pretty };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "tsv") return OutputFormat::Tsv;
  if (s == "pretty") return OutputFormat::Pretty;
  throw InputError("unknown format '" + s + "' (expected json, tsv, pretty)");
}

inline std::string weight_csv(const WeightVector& w) {
  if (w.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

inline std::string weight_pretty(const WeightVector& w) { return "(" + weight_csv(w) + ")"; }

/// Table rendered the way the survey tables print: multiplicity prefixes
/// with a times sign, terms joined by " + ", descending lexicographic order.
template <typename TermMap>
inline std::string terms_pretty(const TermMap& terms) {
  std::string s;
  for (const auto& [w, m] : terms) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "×";
    s += weight_pretty(w);
  }
  return s.empty() ? "(empty)" : s;
}

template <typename TermMap>
inline Json terms_json(const TermMap& terms) {
  Json arr = Json::array();
  for (const auto& [w, m] : terms) arr.push_back(Json{{"weight", w}, {"mult", m}});
  return arr;
}

/// Inverse of terms_pretty for canonical tables; accepts "N×(w)" and the
/// ASCII fallback "N*(w)".
inline std::vector<std::pair<WeightVector, long long>> parse_pretty_terms(const std::string& text) {
  std::vector<std::pair<WeightVector, long long>> out;
  std::size_t i = 0;
  auto skip_ws = [&]() {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    long long mult = 1;
    if (text[i] != '(') {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])))) ++j;
      if (j == i) throw InputError("bad term list near '" + text.substr(i) + "'");
      mult = std::stoll(text.substr(i, j - i));
      i = j;
      if (i + 1 < text.size() && text.compare(i, 2, "×") == 0)
        i += 2;
      else if (i < text.size() && text[i] == '*')
        i += 1;
      else
        throw InputError("bad multiplicity prefix in term list");
    }
    if (i >= text.size() || text[i] != '(') throw InputError("expected '(' in term list");
    std::size_t close = text.find(')', i);
    if (close == std::string::npos) throw InputError("unbalanced '(' in term list");
    std::string inside = text.substr(i + 1, close - i - 1);
    WeightVector w;
    std::string num;
    for (char c : inside + ",") {
      if (c == ',') {
        if (num.empty()) throw InputError("bad weight '" + inside + "'");
        w.push_back(std::stoll(num));
        num.clear();
      } else if (c != ' ') {
        num += c;
      }
    }
    out.emplace_back(std::move(w), mult);
    i = close + 1;
    skip_ws();
    if (i < text.size()) {
      if (text[i] != '+') throw InputError("expected '+' between terms");
      ++i;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Result documents. One JSON schema per subcommand, documented in README.

inline Json decomposition_document(const Decomposition& d, const WeightVector& lhs,
                                   const WeightVector& rhs, const std::string& engine_tag) {
  return Json{{"family", kind_flag(d.family.kind)}, {"rank", d.family.rank},
              {"lhs", lhs},                         {"rhs", rhs},
              {"engine", engine_tag},               {"terms", terms_json(d.terms)}};
}

inline std::string decomposition_tsv(const Decomposition& d) {
  std::string s;
  for (const auto& [w, m] : d.terms) s += weight_csv(w) + "\t" + std::to_string(m) + "\n";
  return s;
}

inline Json stable_document(const StableDecomposition& s, const Partition& lhs,
                            const Partition& rhs) {
  return Json{{"lhs", lhs.parts()},
              {"rhs", rhs.parts()},
              {"n0", s.n0},
              {"via_family", kind_flag(s.via.kind)},
              {"via_rank", s.via.rank},
              {"terms", terms_json(s.terms)}};
}

inline Json stability_document(const StabilityReport& rep) {
  Json fams = Json::array();
  for (auto k : rep.families) fams.push_back(kind_flag(k));
  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back(Json{{"family", kind_flag(row.family.kind)},
                        {"rank", row.family.rank},
                        {"engine", row.engine_tag},
                        {"terms", terms_json(row.table.terms)}});
  Json stable = Json::object();
  for (const auto& [k, n] : rep.stable_from) stable[kind_flag(k)] = n;
  return Json{{"lhs", rep.lhs.parts()},
              {"rhs", rep.rhs.parts()},
              {"n0", rep.n0},
              {"nmax", rep.n_max},
              {"families", fams},
              {"per_rank", rows},
              {"stable_from", stable},
              {"vanishing_ok", rep.vanishing_ok},
              {"cross_group_ok", rep.cross_group_ok},
              {"conclusions_verified", rep.conclusions_ok()},
              {"violations", rep.violations}};
}

inline std::string stability_tsv(const StabilityReport& rep) {
  std::string s;
  for (const auto& row : rep.rows)
    for (const auto& [w, m] : row.table.terms)
      s += kind_flag(row.family.kind) + "\t" + std::to_string(row.family.rank) + "\t" +
           weight_csv(w) + "\t" + std::to_string(m) + "\n";
  for (const auto& [k, n] : rep.stable_from)
    s += "# stable_from " + kind_flag(k) + "=" + std::to_string(n) + "\n";
  s += std::string("# vanishing_ok ") + (rep.vanishing_ok ? "true" : "false") + "\n";
  s += std::string("# cross_group_ok ") + (rep.cross_group_ok ? "true" : "false") + "\n";
  s += std::string("# conclusions_verified ") + (rep.conclusions_ok() ? "true" : "false") + "\n";
  return s;
}

inline std::string stability_pretty(const StabilityReport& rep) {
  std::ostringstream os;
  os << "lhs " << weight_pretty(rep.lhs.parts()) << "  rhs " << weight_pretty(rep.rhs.parts())
     << "  n0 " << rep.n0 << "  ranks up to " << rep.n_max << "\n";
  for (const auto& row : rep.rows)
    os << display_name(row.family) << " [" << row.engine_tag
       << "]: " << terms_pretty(row.table.terms) << "\n";
  os << "stable_from:";
  for (const auto& [k, n] : rep.stable_from) os << " " << kind_flag(k) << "=" << n;
  os << "\nvanishing_ok: " << (rep.vanishing_ok ? "yes" : "NO")
     << "   cross_group_ok: " << (rep.cross_group_ok ? "yes" : "NO")
     << "   conclusions: " << (rep.conclusions_ok() ? "verified" : "NOT VERIFIED") << "\n";
  for (const auto& v : rep.violations) os << "violation: " << v << "\n";
  return os.str();
}

}  // namespace stabletensor

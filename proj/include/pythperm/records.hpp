#pragma once

// Output records and their three encodings. A record is an ordered JSON
// object whose "kind" is one of triple, quad, report, search-record. Every
// encoding round-trips losslessly through `read_records`.
//
//   json  one compact object per line
//   csv   header row (re-emitted whenever the field set changes), one row per
//         record; nested values are compact JSON in quoted cells
//   text  "kind  field=value ..." with arrays of objects moved onto indented
//         "  field: {...}" continuation lines

#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pythperm/eigen.hpp"
#include "pythperm/families.hpp"
#include "pythperm/search.hpp"
#include "pythperm/triples.hpp"

namespace pythperm {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

inline std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Record builders

inline Json pair_json(const std::optional<EigenPair>& p) {
  return p ? Json::array({p->plus, p->minus}) : Json(nullptr);
}

template <std::size_t N>
Json ints_json(const std::array<Int, N>& v) {
  Json out = Json::array();
  for (Int x : v) out.push_back(x);
  return out;
}

inline Json triple_record(const PythTriple& p) {
  Json j;
  j["kind"] = "triple";
  j["r"] = p.r;
  j["s"] = p.s;
  j["t"] = p.t;
  j["primitive"] = is_primitive(p);
  return j;
}

/// Parameter values that are plain integers are emitted as numbers.
inline Json provenance_params_json(const Provenance& prov) {
  Json params = Json::object();
  for (const auto& [key, value] : prov.params) {
    Int parsed = 0;
    std::size_t used = 0;
    try {
      parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == value.size() && !value.empty()) params[key] = parsed;
    else params[key] = value;
  }
  return params;
}

/// Spectra of the six representative arrangements of `q` in construction order.
inline std::array<std::optional<EigenPair>, 6> representative_spectra(const CoefficientQuad& q) {
  std::array<std::optional<EigenPair>, 6> out;
  const auto reps = representatives(q.v);
  for (std::size_t i = 0; i < 6; ++i) out[i] = eigenvalues_2x2(reps[i]);
  return out;
}

inline Json quad_record(const CoefficientQuad& q, bool verified) {
  Json j;
  j["kind"] = "quad";
  j["family"] = q.provenance.family;
  j["params"] = provenance_params_json(q.provenance);
  j["quad"] = ints_json(q.v);
  j["multiset"] = ints_json(q.multiset());
  const auto t = q.ansatz_sum();
  j["ansatz_sum"] = t ? Json(*t) : Json(nullptr);
  Json classes = Json::array();
  for (const auto& p : representative_spectra(q)) classes.push_back(pair_json(p));
  j["eigenvalue_classes"] = classes;
  j["verified"] = verified;
  return j;
}

inline Json report_record(const std::array<Int, 4>& input, const EigenReport& r) {
  Json j;
  j["kind"] = "report";
  j["dim"] = 2;
  j["coefficients"] = ints_json(input);
  j["multiset"] = ints_json(r.multiset);
  j["all_pass"] = r.all_pass;
  j["distinct_arrangements"] = r.arrangements.size();
  j["swap_classes"] = r.swap_classes;
  j["first_failure"] =
      r.first_failure ? ints_json(r.arrangements[*r.first_failure].matrix.entries()) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& a : r.arrangements) {
    Json row;
    row["matrix"] = ints_json(a.matrix.entries());
    row["verdict"] = to_string(a.verdict);
    row["eigenvalues"] = pair_json(a.eigenvalues);
    row["swap_class"] = a.swap_class;
    rows.push_back(row);
  }
  j["arrangements"] = rows;
  return j;
}

inline Json report_record(const std::array<Int, 9>& input, const EigenReport3& r) {
  Json j;
  j["kind"] = "report";
  j["dim"] = 3;
  j["coefficients"] = ints_json(input);
  j["multiset"] = ints_json(r.multiset);
  j["all_pass"] = r.all_pass;
  j["distinct_arrangements"] = r.distinct_arrangements;
  j["arrangements_checked"] = r.arrangements_checked;
  j["first_failure"] = r.first_failure ? ints_json(*r.first_failure) : Json(nullptr);
  Json spectra = Json::array();
  for (const auto& s : r.spectra) spectra.push_back(ints_json(s));
  j["spectra"] = spectra;
  return j;
}

inline Json to_json(const SearchRecord& r) {
  Json j;
  j["kind"] = "search-record";
  j["dim"] = r.dim;
  j["coefficients"] = r.coefficients;
  j["classification"] = to_string(r.classification);
  j["trivial"] = r.trivial;
  j["degenerate"] = r.degenerate;
  if (r.ansatz) {
    Json a;
    a["pairing"] = Json::array({ints_json(r.ansatz->pairs[0]), ints_json(r.ansatz->pairs[1])});
    a["t"] = r.ansatz->t;
    j["ansatz"] = a;
  } else {
    j["ansatz"] = nullptr;
  }
  j["eigenvalue_classes"] = r.eigenvalue_classes;
  return j;
}

inline SearchRecord search_record_from_json(const Json& j) {
  if (j.value("kind", "") != "search-record") throw std::invalid_argument("not a search-record");
  SearchRecord r;
  r.dim = j.at("dim").get<int>();
  r.coefficients = j.at("coefficients").get<std::vector<Int>>();
  const auto cls = classification_from_string(j.at("classification").get<std::string>());
  if (!cls) throw std::invalid_argument("unknown classification " + j.at("classification").dump());
  r.classification = *cls;
  r.trivial = j.at("trivial").get<bool>();
  r.degenerate = j.at("degenerate").get<bool>();
  if (!j.at("ansatz").is_null()) {
    AnsatzPairing a;
    const auto& pairing = j.at("ansatz").at("pairing");
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) a.pairs[i][k] = pairing.at(i).at(k).get<Int>();
    a.t = j.at("ansatz").at("t").get<Int>();
    r.ansatz = a;
  }
  r.eigenvalue_classes = j.at("eigenvalue_classes").get<std::vector<std::vector<Int>>>();
  return r;
}

// ---------------------------------------------------------------------------
// Encodings

namespace detail {

/// Scalars print bare; strings print bare unless they need quoting.
inline std::string csv_cell(const Json& v) {
  std::string raw;
  if (v.is_string()) {
    raw = v.get<std::string>();
    if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  } else if (!v.is_structured()) {
    return v.dump();
  } else {
    raw = v.dump();
  }
  std::string quoted = "\"";
  for (char ch : raw) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  return cells;
}

/// Inverse of the bare/compact-JSON cell convention.
inline Json decode_value(const std::string& cell) {
  if (cell.empty()) return "";
  try {
    return Json::parse(cell);
  } catch (const Json::parse_error&) {
    return cell;
  }
}

inline bool is_object_array(const Json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); });
}

inline std::string text_value(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    // Bare strings must not look like JSON or contain separators.
    if (!s.empty() && s != "*" && s.find_first_of(" \t=\"") == std::string::npos && decode_value(s).is_string())
      return s;
  }
  return v.dump();
}

}  // namespace detail

/// Streams records in one format; owns CSV header state.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

  void write(const Json& record) {
    switch (format_) {
      case Format::json:
        out_ << record.dump() << '\n';
        break;
      case Format::csv:
        write_csv(record);
        break;
      case Format::text:
        write_text(record);
        break;
    }
  }

 private:
  void write_csv(const Json& record) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : record.items()) keys.push_back(k);
    if (keys != header_) {
      header_ = keys;
      for (std::size_t i = 0; i < keys.size(); ++i) out_ << (i ? "," : "") << keys[i];
      out_ << '\n';
    }
    bool first = true;
    for (const auto& [k, v] : record.items()) {
      out_ << (first ? "" : ",") << detail::csv_cell(v);
      first = false;
    }
    out_ << '\n';
  }

  void write_text(const Json& record) {
    out_ << std::left << std::setw(14) << record.value("kind", "record");
    std::vector<std::pair<std::string, const Json*>> nested;
    for (const auto& [k, v] : record.items()) {
      if (k == "kind") continue;
      std::string token;
      if (detail::is_object_array(v)) {
        token = k + "=*";
        nested.emplace_back(k, &v);
      } else {
        token = k + "=" + detail::text_value(v);
      }
      out_ << "  " << std::setw(18) << token;
    }
    out_ << '\n';
    for (const auto& [k, rows] : nested)
      for (const auto& row : *rows) out_ << "  " << k << ": " << row.dump() << '\n';
  }

  std::ostream& out_;
  Format format_;
  std::vector<std::string> header_;
};

/// Parse a stream produced by `RecordWriter` in the same format.
inline std::vector<Json> read_records(std::istream& in, Format format) {
  std::vector<Json> out;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    switch (format) {
      case Format::json:
        out.push_back(Json::parse(line));
        break;
      case Format::csv: {
        auto cells = detail::split_csv_line(line);
        if (!cells.empty() && cells[0] == "kind") {
          header = std::move(cells);
          break;
        }
        if (cells.size() != header.size()) throw std::invalid_argument("CSV row does not match header");
        Json j;
        for (std::size_t i = 0; i < cells.size(); ++i)
          j[header[i]] = i == 0 ? Json(cells[i]) : detail::decode_value(cells[i]);
        out.push_back(j);
        break;
      }
      case Format::text: {
        if (line.rfind("  ", 0) == 0) {
          const auto colon = line.find(": ");
          if (out.empty() || colon == std::string::npos) throw std::invalid_argument("stray continuation line");
          const std::string key = line.substr(2, colon - 2);
          out.back()[key].push_back(Json::parse(line.substr(colon + 2)));
          break;
        }
        std::istringstream tokens(line);
        std::string kind;
        tokens >> kind;
        Json j;
        j["kind"] = kind;
        std::string token;
        while (tokens >> token) {
          const auto eq = token.find('=');
          if (eq == std::string::npos) throw std::invalid_argument("malformed text token " + token);
          const std::string key = token.substr(0, eq);
          const std::string value = token.substr(eq + 1);
          j[key] = value == "*" ? Json::array() : detail::decode_value(value);
        }
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

}  // namespace pythperm

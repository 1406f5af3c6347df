#include "psdcert/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace psdcert {

namespace {

using json = nlohmann::json;

// DOM builder that stores every number as its source text.
class LexemeSax : public nlohmann::detail::json_sax_dom_parser<json> {
 public:
  using base = nlohmann::detail::json_sax_dom_parser<json>;
  using base::base;

  bool number_integer(json::number_integer_t v) {
    std::string s = std::to_string(v);
    return base::string(s);
  }
  bool number_unsigned(json::number_unsigned_t v) {
    std::string s = std::to_string(v);
    return base::string(s);
  }
  bool number_float(json::number_float_t, const std::string& lexeme) {
    std::string s = lexeme;
    return base::string(s);
  }
};

ParseError json_error(const std::string& what) { return ParseError("matrix JSON: " + what, 1, 1); }

}  // namespace

RawMatrix read_matrix_text(std::string_view text) {
  RawMatrix raw;
  std::size_t line = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line;
    std::string_view l = text.substr(pos, end - pos);
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    std::vector<MatrixToken> row;
    std::size_t k = 0;
    while (k < l.size()) {
      while (k < l.size() && std::isspace(static_cast<unsigned char>(l[k]))) ++k;
      if (k >= l.size()) break;
      const std::size_t start = k;
      while (k < l.size() && !std::isspace(static_cast<unsigned char>(l[k]))) ++k;
      const std::string tok(l.substr(start, k - start));
      MatrixToken t{std::nullopt, line, start + 1};
      if (tok != "?") t.text = tok;
      row.push_back(std::move(t));
    }
    if (!row.empty()) {
      if (!raw.rows.empty() && row.size() != raw.rows.front().size())
        throw ParseError("expected " + std::to_string(raw.rows.front().size()) + " entries, got " +
                             std::to_string(row.size()),
                         line, 1);
      raw.rows.push_back(std::move(row));
    }
    pos = end + 1;
  }
  if (raw.rows.empty()) throw ParseError("empty matrix", line, 1);
  raw.m = raw.rows.size();
  if (raw.rows.front().size() != raw.m)
    throw ParseError("matrix is not square: " + std::to_string(raw.m) + " rows of " +
                         std::to_string(raw.rows.front().size()) + " entries",
                     raw.rows.back().front().line, 1);
  return raw;
}

RawMatrix read_matrix_json(std::string_view text) {
  json doc;
  LexemeSax sax(doc, true);
  try {
    json::sax_parse(text, &sax);
  } catch (const json::parse_error& e) {
    throw parse_error_at(text, e.byte == 0 ? 0 : e.byte - 1, std::string("matrix JSON: ") + e.what());
  }
  if (!doc.is_object()) throw json_error("top level must be an object");
  if (!doc.contains("entries")) throw json_error("missing \"entries\"");
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.empty()) throw json_error("\"entries\" must be a nonempty array of rows");
  RawMatrix raw;
  raw.m = entries.size();
  if (doc.contains("m")) {
    const auto& m = doc["m"];
    std::size_t declared = 0;
    try {
      declared = m.is_string() ? std::stoul(m.get<std::string>()) : 0;
    } catch (const std::exception&) {
    }
    if (declared != raw.m)
      throw json_error("\"m\" is " + m.dump() + " but \"entries\" has " + std::to_string(raw.m) + " rows");
  }
  for (std::size_t i = 0; i < raw.m; ++i) {
    const auto& row = entries[i];
    if (!row.is_array() || row.size() != raw.m)
      throw json_error("row " + std::to_string(i + 1) + " must have " + std::to_string(raw.m) + " entries");
    std::vector<MatrixToken> r;
    for (std::size_t j = 0; j < raw.m; ++j) {
      const auto& v = row[j];
      MatrixToken t{std::nullopt, 1, 1};
      if (v.is_string()) {
        t.text = v.get<std::string>();
        if (*t.text == "?") t.text.reset();
      } else if (!v.is_null()) {
        throw json_error("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") must be a number, a string or null");
      }
      // locate string entries for error messages
      if (t.text) {
        const auto at = text.find(*t.text);
        if (at != std::string_view::npos) {
          const auto e = parse_error_at(text, at, "");
          t.line = e.line();
          t.column = e.column();
        }
      }
      r.push_back(std::move(t));
    }
    raw.rows.push_back(std::move(r));
  }
  return raw;
}

RawMatrix read_matrix(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? read_matrix_json(text) : read_matrix_text(text);
  }
  throw ParseError("empty matrix", 1, 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json index_set_json(const std::optional<IndexSet>& s) {
  if (!s) return nullptr;
  auto a = nlohmann::json::array();
  for (std::size_t i : *s) a.push_back(i + 1);
  return a;
}

nlohmann::json verdict_json(const Verdict& v, Mode mode) {
  return {{mode_name(mode), v.positive}, {"witness", index_set_json(v.witness)},
          {"det_evals", v.stats.det_evaluations}};
}

}  // namespace psdcert

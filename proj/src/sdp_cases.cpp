#include "psdcert/sdp_cases.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psdcert {

namespace {

using K = ConstraintKind;

ElementConstraint det(K k, std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> v;
  for (std::size_t i : one_based) v.push_back(i - 1);
  return ElementConstraint::det(k, IndexSet(v));
}

ElementConstraint entry(K k, std::size_t i, std::size_t j) { return ElementConstraint::entry(k, i - 1, j - 1); }

void pin_zero(std::vector<ElementConstraint>& c, std::initializer_list<std::pair<std::size_t, std::size_t>> ps) {
  for (const auto& [i, j] : ps) c.push_back(entry(K::entry_eq_0, i, j));
}

ElementConstraint constraint_from(const std::string& kind, const std::vector<long>& one_based, std::size_t line) {
  const auto k = parse_kind(kind);
  if (!k) throw ParseError("unknown constraint kind '" + kind + "'", line, 1);
  std::vector<std::size_t> idx;
  for (long i : one_based) {
    if (i < 1) throw ParseError("constraint indices are 1-based, got " + std::to_string(i), line, 1);
    idx.push_back(static_cast<std::size_t>(i - 1));
  }
  ElementConstraint c{*k, idx};
  if (c.is_det()) {
    if (idx.empty() || !std::is_sorted(idx.begin(), idx.end()) ||
        std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      throw ParseError("determinant indices must be distinct and increasing", line, 1);
    c = ElementConstraint::det(*k, IndexSet(idx));
  } else {
    if (idx.size() != 2) throw ParseError("entry constraint needs 2 indices", line, 1);
    c = ElementConstraint::entry(*k, idx[0], idx[1]);
  }
  return c;
}

}  // namespace

std::vector<CaseSystem> psd_cases_m4() {
  std::vector<CaseSystem> out;
  {
    CaseSystem s{1, {}, "X(2,2), X(3,3) > 0 and det(X[{2,3}]) > 0"};
    auto& c = s.constraints;
    c = {entry(K::entry_ge_0, 1, 1), entry(K::entry_ge_0, 4, 4), entry(K::entry_gt_0, 2, 2),
         entry(K::entry_gt_0, 3, 3), det(K::det_gt_0, {2, 3}),     det(K::det_ge_0, {1, 2, 3}),
         det(K::det_ge_0, {2, 3, 4}), det(K::det_ge_0, {1, 2, 3, 4})};
    out.push_back(s);
  }
  {
    // det(X[{1,2}]) and det(X[{3,4}]) are not implied by the others here
    CaseSystem s{2, {}, "X(2,2), X(3,3) > 0 and det(X[{2,3}]) = 0"};
    auto& c = s.constraints;
    c = {entry(K::entry_ge_0, 1, 1), entry(K::entry_ge_0, 4, 4), entry(K::entry_gt_0, 2, 2),
         entry(K::entry_gt_0, 3, 3), det(K::det_eq_0, {2, 3}),     det(K::det_ge_0, {1, 2, 3}),
         det(K::det_ge_0, {2, 3, 4}), det(K::det_ge_0, {1, 2, 4}),  det(K::det_ge_0, {1, 2}),
         det(K::det_ge_0, {3, 4})};
    out.push_back(s);
  }
  {
    CaseSystem s{3, {}, "X(2,2) > 0, row and column 3 zero"};
    auto& c = s.constraints;
    c = {entry(K::entry_ge_0, 1, 1), entry(K::entry_ge_0, 4, 4), entry(K::entry_gt_0, 2, 2),
         det(K::det_ge_0, {1, 2}),   det(K::det_ge_0, {2, 4}),     det(K::det_ge_0, {1, 2, 4})};
    pin_zero(c, {{3, 3}, {1, 3}, {2, 3}, {3, 4}});
    out.push_back(s);
  }
  {
    CaseSystem s{4, {}, "X(3,3) > 0, row and column 2 zero"};
    auto& c = s.constraints;
    c = {entry(K::entry_ge_0, 1, 1), entry(K::entry_ge_0, 4, 4), entry(K::entry_gt_0, 3, 3),
         det(K::det_ge_0, {1, 3}),   det(K::det_ge_0, {3, 4}),     det(K::det_ge_0, {1, 3, 4})};
    pin_zero(c, {{2, 2}, {1, 2}, {2, 3}, {2, 4}});
    out.push_back(s);
  }
  {
    CaseSystem s{5, {}, "rows and columns 2 and 3 zero"};
    auto& c = s.constraints;
    c = {entry(K::entry_ge_0, 1, 1), entry(K::entry_ge_0, 4, 4), det(K::det_ge_0, {1, 4})};
    pin_zero(c, {{2, 2}, {3, 3}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
    out.push_back(s);
  }
  return out;
}

std::string cases_to_json(const std::vector<CaseSystem>& cases, int indent) {
  auto arr = nlohmann::json::array();
  for (const auto& s : cases) {
    auto cs = nlohmann::json::array();
    for (const auto& c : s.constraints) {
      std::vector<std::size_t> idx;
      for (std::size_t i : c.indices) idx.push_back(i + 1);
      cs.push_back({{"kind", std::string(kind_name(c.kind))}, {"indices", idx}});
    }
    arr.push_back({{"case", s.id}, {"constraints", cs}, {"description", s.description}});
  }
  return arr.dump(indent);
}

std::vector<CaseSystem> cases_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error_at(text, e.byte == 0 ? 0 : e.byte - 1, std::string("case JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("case JSON must be an array", 1, 1);
  std::vector<CaseSystem> out;
  try {
    for (const auto& item : doc) {
      CaseSystem s;
      s.id = item.at("case").get<int>();
      s.description = item.value("description", "");
      for (const auto& c : item.at("constraints"))
        s.constraints.push_back(constraint_from(c.at("kind").get<std::string>(), c.at("indices").get<std::vector<long>>(), 1));
      out.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("case JSON: ") + e.what(), 1, 1);
  }
  return out;
}

std::string cases_to_csv(const std::vector<CaseSystem>& cases) {
  std::ostringstream os;
  os << "case,kind,indices\n";
  for (const auto& s : cases)
    for (const auto& c : s.constraints) {
      os << s.id << ',' << kind_name(c.kind) << ',';
      for (std::size_t k = 0; k < c.indices.size(); ++k) os << (k ? " " : "") << c.indices[k] + 1;
      os << '\n';
    }
  return os.str();
}

std::vector<CaseSystem> cases_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "case,kind,indices") throw ParseError("case CSV: expected header case,kind,indices", 1, 1);
  std::vector<CaseSystem> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string id, kind, idx;
    if (!std::getline(row, id, ',') || !std::getline(row, kind, ',') || !std::getline(row, idx))
      throw ParseError("case CSV: expected 3 fields", lineno, 1);
    std::vector<long> ids;
    std::istringstream ns(idx);
    long v;
    while (ns >> v) ids.push_back(v);
    int case_id;
    try {
      case_id = std::stoi(id);
    } catch (const std::exception&) {
      throw ParseError("case CSV: bad case id '" + id + "'", lineno, 1);
    }
    if (out.empty() || out.back().id != case_id) out.push_back({case_id, {}, ""});
    out.back().constraints.push_back(constraint_from(kind, ids, lineno));
  }
  return out;
}

}  // namespace psdcert

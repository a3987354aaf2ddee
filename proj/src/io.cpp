#include "fansig/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fansig/errors.hpp"

namespace fansig {

namespace {

long long int_field(const Json& value, const std::string& where) {
  if (!value.is_number_integer())
    fail(ErrorCode::ParseError, where + ": expected an integer");
  return value.get<long long>();
}

std::vector<std::vector<long long>> int_table(const Json& value,
                                              const std::string& where) {
  if (!value.is_array())
    fail(ErrorCode::ParseError, where + ": expected an array");
  std::vector<std::vector<long long>> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const Json& row = value[i];
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!row.is_array())
      fail(ErrorCode::ParseError, row_where + ": expected an array");
    std::vector<long long> entries;
    for (std::size_t j = 0; j < row.size(); ++j)
      entries.push_back(
          int_field(row[j], row_where + "[" + std::to_string(j) + "]"));
    out.push_back(std::move(entries));
  }
  return out;
}

}  // namespace

Fan fan_from_json(const Json& doc) {
  if (!doc.is_object())
    fail(ErrorCode::ParseError, "top level: expected an object");
  for (const char* key : {"rank", "rays", "max_cones"})
    if (!doc.contains(key))
      fail(ErrorCode::ParseError, std::string(key) + ": missing field");

  const long long rank = int_field(doc["rank"], "rank");
  if (rank < 0) fail(ErrorCode::ParseError, "rank: must be nonnegative");

  std::vector<Vec> rays;
  for (const auto& row : int_table(doc["rays"], "rays")) {
    if (static_cast<long long>(row.size()) != rank)
      fail(ErrorCode::ParseError,
           "rays: each ray needs exactly " + std::to_string(rank) +
               " coordinates");
    Vec v(rank);
    for (long long j = 0; j < rank; ++j)
      v(j) = Rational(static_cast<long>(row[j]));
    rays.push_back(std::move(v));
  }

  std::vector<Cone> maximal;
  for (const auto& row : int_table(doc["max_cones"], "max_cones")) {
    Cone c;
    for (long long idx : row) {
      if (idx < 0 || idx >= static_cast<long long>(rays.size()))
        fail(ErrorCode::ParseError,
             "max_cones: ray index " + std::to_string(idx) +
                 " out of range");
      c.push_back(static_cast<int>(idx));
    }
    maximal.push_back(std::move(c));
  }

  return build_fan(static_cast<int>(rank), rays, maximal);
}

Fan parse_fan_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  return fan_from_json(doc);
}

Fan load_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fan_text(buf.str());
}

Json fan_to_json(const Fan& fan) {
  Json doc;
  doc["rank"] = fan.rank;
  Json rays = Json::array();
  for (const Vec& v : fan.rays) {
    Json row = Json::array();
    for (int j = 0; j < fan.rank; ++j) row.push_back(v(j).to_long());
    rays.push_back(std::move(row));
  }
  doc["rays"] = std::move(rays);
  doc["max_cones"] = fan.maximal;
  return doc;
}

Json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.num().fits_slong_p()) return r.to_long();
  return r.str();
}

Json theorem_report_to_json(const TheoremReport& rep) {
  Json doc;
  doc["theorem"] = rep.theorem;
  doc["fan"] = rep.fan_id;
  for (const auto& [name, value] : rep.quantities) {
    if (name == "locally_convex")
      doc[name] = !value.is_zero();
    else
      doc[name] = rational_to_json(value);
  }
  doc["status"] = rep.status;
  doc["pass"] = rep.pass;
  if (!rep.terms.empty()) {
    Json terms = Json::array();
    for (const LRTerm& term : rep.terms) {
      Json row;
      row["rays"] = term.rays;
      row["exponents"] = term.exponents;
      row["value"] = rational_to_json(term.value);
      row["spans_cone"] = term.spans_cone;
      terms.push_back(std::move(row));
    }
    doc["terms"] = std::move(terms);
  }
  return doc;
}

}  // namespace fansig

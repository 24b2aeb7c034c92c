#include "kgo/serialize.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace kgo {
namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json optional_json(const std::optional<InequalityRecord>& v) {
  return v ? to_json(*v) : json(nullptr);
}

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::optional<InequalityRecord> inequality_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return inequality_from_json(j.at(key));
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) out += ';';
    out += flags[i];
  }
  return out;
}

std::optional<double> margin_of(const std::optional<InequalityRecord>& rec) {
  if (!rec) return std::nullopt;
  return rec->margin;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  return fmt::format("{}", value);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string("NA");
}

const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols{"n",  "gamma", "x2", "dx",   "p2", "dp", "dxdp",
                                             "Fx", "Fp",    "FxFp", "Sx", "Sp", "S_sum"};
  return cols;
}

const std::vector<std::string>& report_extra_columns() {
  static const std::vector<std::string> cols{
      "branch",           "E",
      "lambda",           "Fx_paper",
      "Fp_paper",         "stam_x_margin",
      "stam_p_margin",    "cramer_rao_x_margin",
      "cramer_rao_p_margin", "fisher_product_margin",
      "bbm_margin",       "forensic",
      "flags"};
  return cols;
}

std::vector<std::optional<double>> table_values(const MeasureReport& r) {
  return {static_cast<double>(r.n), r.gamma, r.x2, r.dx, r.p2, r.dp, r.dxdp,
          r.Fx, r.Fp, r.F_prod, r.Sx, r.Sp, r.S_sum};
}

std::vector<double> table_values(const PublishedRow& row) {
  return {static_cast<double>(row.n), row.gamma, row.x2, row.dx, row.p2, row.dp, row.dxdp,
          row.Fx, row.Fp, row.FxFp, row.Sx, row.Sp, row.S_sum};
}

std::string csv_header(bool compare_paper) {
  std::string out;
  for (const auto& c : table_columns()) out += (out.empty() ? "" : ",") + c;
  for (const auto& c : report_extra_columns()) out += "," + c;
  if (compare_paper) {
    for (std::size_t i = 2; i < table_columns().size(); ++i) out += ",paper_" + table_columns()[i];
    for (std::size_t i = 2; i < table_columns().size(); ++i) out += ",dev_" + table_columns()[i];
  }
  return out;
}

std::string csv_row(const MeasureReport& r, bool compare_paper) {
  const auto values = table_values(r);
  std::string out = std::to_string(r.n);
  for (std::size_t i = 1; i < values.size(); ++i) out += "," + format_optional(values[i]);
  out += ",";
  out += to_string(r.branch);
  out += "," + format_number(r.E) + "," + format_number(r.lambda);
  out += "," + format_optional(r.Fx_paper) + "," + format_optional(r.Fp_paper);
  for (const auto* rec : {&r.stam_x, &r.stam_p, &r.cramer_rao_x, &r.cramer_rao_p,
                          &r.fisher_product, &r.bbm})
    out += "," + format_optional(margin_of(*rec));
  out += r.forensic ? ",1" : ",0";
  out += "," + join_flags(r.flags);
  if (compare_paper) {
    const auto published = published_row(r.n, r.gamma);
    std::vector<double> pub;
    if (published) pub = table_values(*published);
    for (std::size_t i = 2; i < values.size(); ++i)
      out += "," + (published ? format_number(pub[i]) : std::string("NA"));
    for (std::size_t i = 2; i < values.size(); ++i) {
      std::optional<double> dev;
      if (published && values[i]) dev = *values[i] - pub[i];
      out += "," + format_optional(dev);
    }
  }
  return out;
}

json to_json(const InequalityRecord& rec) {
  return json{{"name", rec.name},
              {"relation", rec.relation == Relation::less_equal ? "<=" : ">="},
              {"lhs", rec.lhs},
              {"rhs", rec.rhs},
              {"margin", rec.margin},
              {"satisfied", rec.satisfied}};
}

InequalityRecord inequality_from_json(const json& j) {
  InequalityRecord rec;
  rec.name = j.at("name").get<std::string>();
  const auto rel = j.at("relation").get<std::string>();
  if (rel == "<=")
    rec.relation = Relation::less_equal;
  else if (rel == ">=")
    rec.relation = Relation::greater_equal;
  else
    throw std::invalid_argument("unknown relation '" + rel + "'");
  rec.lhs = j.at("lhs").get<double>();
  rec.rhs = j.at("rhs").get<double>();
  rec.margin = j.at("margin").get<double>();
  rec.satisfied = j.at("satisfied").get<bool>();
  return rec;
}

json to_json(const MeasureReport& r) {
  return json{{"n", r.n},
              {"gamma", r.gamma},
              {"branch", std::string(to_string(r.branch))},
              {"E", r.E},
              {"lambda", r.lambda},
              {"x2", optional_json(r.x2)},
              {"p2", optional_json(r.p2)},
              {"dx", optional_json(r.dx)},
              {"dp", optional_json(r.dp)},
              {"dxdp", optional_json(r.dxdp)},
              {"Fx", optional_json(r.Fx)},
              {"Fp", optional_json(r.Fp)},
              {"Fx_paper", optional_json(r.Fx_paper)},
              {"Fp_paper", optional_json(r.Fp_paper)},
              {"Sx", optional_json(r.Sx)},
              {"Sp", optional_json(r.Sp)},
              {"S_sum", optional_json(r.S_sum)},
              {"F_prod", optional_json(r.F_prod)},
              {"stam_x", optional_json(r.stam_x)},
              {"stam_p", optional_json(r.stam_p)},
              {"cramer_rao_x", optional_json(r.cramer_rao_x)},
              {"cramer_rao_p", optional_json(r.cramer_rao_p)},
              {"fisher_product", optional_json(r.fisher_product)},
              {"bbm", optional_json(r.bbm)},
              {"forensic", r.forensic},
              {"flags", r.flags}};
}

MeasureReport report_from_json(const json& j) {
  MeasureReport r;
  r.n = j.at("n").get<int>();
  r.gamma = j.at("gamma").get<double>();
  r.branch = parse_branch(j.at("branch").get<std::string>());
  r.E = j.at("E").get<double>();
  r.lambda = j.at("lambda").get<double>();
  r.x2 = optional_from(j, "x2");
  r.p2 = optional_from(j, "p2");
  r.dx = optional_from(j, "dx");
  r.dp = optional_from(j, "dp");
  r.dxdp = optional_from(j, "dxdp");
  r.Fx = optional_from(j, "Fx");
  r.Fp = optional_from(j, "Fp");
  r.Fx_paper = optional_from(j, "Fx_paper");
  r.Fp_paper = optional_from(j, "Fp_paper");
  r.Sx = optional_from(j, "Sx");
  r.Sp = optional_from(j, "Sp");
  r.S_sum = optional_from(j, "S_sum");
  r.F_prod = optional_from(j, "F_prod");
  r.stam_x = inequality_from(j, "stam_x");
  r.stam_p = inequality_from(j, "stam_p");
  r.cramer_rao_x = inequality_from(j, "cramer_rao_x");
  r.cramer_rao_p = inequality_from(j, "cramer_rao_p");
  r.fisher_product = inequality_from(j, "fisher_product");
  r.bbm = inequality_from(j, "bbm");
  r.forensic = j.at("forensic").get<bool>();
  r.flags = j.at("flags").get<std::vector<std::string>>();
  return r;
}

json to_json(const PublishedRow& row) {
  json j;
  const auto values = table_values(row);
  for (std::size_t i = 0; i < values.size(); ++i) j[table_columns()[i]] = values[i];
  j["n"] = row.n;
  return j;
}

json to_json(const EnergyLevel& level) {
  return json{{"n", level.n},
              {"E", level.E},
              {"lambda", level.lambda},
              {"quartic_residual", level.quartic_residual},
              {"condition_residual", level.condition_residual}};
}

json to_json(const DensityCurve& curve) {
  return json{{"space", std::string(to_string(curve.space))},
              {"kind", std::string(to_string(curve.kind))},
              {"a", curve.grid},
              {"value", curve.values}};
}

std::string density_csv(const DensityCurve& curve) {
  std::string out = "a,value\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    out += format_number(curve.grid[i]) + "," + format_number(curve.values[i]) + "\n";
  return out;
}

}  // namespace kgo

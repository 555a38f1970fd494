#include "hmsa/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hmsa/errors.hpp"

namespace hmsa {
namespace {

template <typename T>
T required(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key)) throw SpecError(std::string("surface spec is missing \"") + key + "\"");
  try {
    return spec.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError(std::string("surface spec field \"") + key + "\" has the wrong type");
  }
}

OrderedJson complex_pair(const Complex& z) { return OrderedJson::array({z.real(), z.imag()}); }

void write_value(std::ostringstream& out, const OrderedJson& value, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* newline = indent > 0 ? "\n" : "";
  switch (value.type()) {
    case OrderedJson::value_t::object: {
      if (value.empty()) {
        out << "{}";
        return;
      }
      out << '{' << newline;
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out << ',' << newline;
        first = false;
        out << pad << OrderedJson(it.key()).dump() << (indent > 0 ? ": " : ":");
        write_value(out, it.value(), indent, depth + 1);
      }
      out << newline << close_pad << '}';
      return;
    }
    case OrderedJson::value_t::array: {
      const bool scalar_row =
          std::all_of(value.begin(), value.end(), [](const OrderedJson& v) { return v.is_primitive(); });
      if (value.empty()) {
        out << "[]";
        return;
      }
      if (scalar_row) {
        out << '[';
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out << (indent > 0 ? ", " : ",");
          write_value(out, value[i], indent, depth + 1);
        }
        out << ']';
        return;
      }
      out << '[' << newline;
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out << ',' << newline;
        out << pad;
        write_value(out, value[i], indent, depth + 1);
      }
      out << newline << close_pad << ']';
      return;
    }
    case OrderedJson::value_t::number_float:
      out << format_number(value.get<double>());
      return;
    default:
      out << value.dump();
      return;
  }
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

StarSurface surface_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw SpecError("surface spec must be a JSON object");
  const auto kind = required<std::string>(spec, "kind");
  if (kind == "sphere") return StarSurface::sphere(required<double>(spec, "radius"));
  if (kind == "ellipsoid") {
    const auto axes = required<std::vector<double>>(spec, "axes");
    if (axes.size() != 3) throw SpecError("ellipsoid \"axes\" must have three entries");
    return StarSurface::ellipsoid(axes[0], axes[1], axes[2]);
  }
  if (kind == "perturbed_sphere") {
    const double base = required<double>(spec, "base_radius");
    if (!spec.contains("modes") || !spec.at("modes").is_array()) {
      throw SpecError("perturbed_sphere needs a \"modes\" array");
    }
    std::vector<PerturbationMode> modes;
    for (const auto& entry : spec.at("modes")) {
      if (!entry.is_object()) throw SpecError("each mode must be an object");
      PerturbationMode mode;
      mode.n = required<int>(entry, "n");
      mode.m = required<int>(entry, "m");
      mode.eps = required<double>(entry, "eps");
      const std::string part = entry.contains("part") ? required<std::string>(entry, "part") : "re";
      if (part == "re") {
        mode.part = HarmonicPart::re;
      } else if (part == "im") {
        mode.part = HarmonicPart::im;
      } else {
        throw SpecError("mode \"part\" must be \"re\" or \"im\"");
      }
      modes.push_back(mode);
    }
    return StarSurface::perturbed_sphere(base, std::move(modes));
  }
  throw SpecError("unknown surface kind \"" + kind + "\"");
}

OrderedJson moment_table_to_json(const MomentTable& table) {
  OrderedJson entries = OrderedJson::array();
  for (int n = 0; n <= table.max_degree(); ++n) {
    for (int m = -n; m <= n; ++m) {
      const CVec3& a = table.a(n, m);
      entries.push_back(OrderedJson{{"n", n},
                                    {"m", m},
                                    {"c", complex_pair(table.c(n, m))},
                                    {"a", OrderedJson::array({complex_pair(a[0]), complex_pair(a[1]),
                                                              complex_pair(a[2])})}});
    }
  }
  return OrderedJson{{"max_degree", table.max_degree()}, {"entries", entries}};
}

OrderedJson report_to_json(const DefectReport& r, const nlohmann::json& surface_spec) {
  const AnalysisConfig& cfg = r.config;
  OrderedJson out;
  out["surface"] = OrderedJson::parse(surface_spec.dump());
  out["config"] = {{"n_theta", cfg.resolution.n_theta},
                   {"n_phi", cfg.resolution.n_phi},
                   {"n_rho", cfg.resolution.n_rho},
                   {"nmax", cfg.moment_degree},
                   {"nbasis", cfg.basis_degree},
                   {"tol", cfg.tol},
                   {"eq10_shell_factors", OrderedJson::array({2.0, 4.0})},
                   {"eq10_shell_quadrature", OrderedJson::array({cfg.shell_theta, cfg.shell_phi})}};
  out["measures"] = {{"area", r.measures.area},
                     {"volume", r.measures.volume},
                     {"c", r.measures.c},
                     {"max_radius", r.max_radius}};
  out["radial_stats"] = {{"mean", r.radial.mean}, {"relative_std", r.radial.relative_std}};
  out["defects"] = {{"tangency", r.tangency_defect},
                    {"moment_residual_norm", r.moment_residual_norm},
                    {"moment_residual_by_degree", r.moment_residual_by_degree},
                    {"eq20_defect_norm", r.eq20_defect_norm},
                    {"eq10_defect_norm", r.eq10_defect_norm},
                    {"torsion_residual", r.torsion_residual}};
  out["torsion"] = {{"degree", r.torsion.degree},
                    {"boundary_misfit", r.torsion.boundary_misfit},
                    {"condition", r.torsion.condition},
                    {"residual", r.torsion.residual},
                    {"flux_error", r.torsion.flux_error}};
  out["decision"] = {{"is_sphere", r.is_sphere},
                     {"radius_estimate", r.radius_estimate},
                     {"tol", cfg.tol}};
  out["moments"] = moment_table_to_json(r.moments);
  return out;
}

std::string dump_json(const OrderedJson& value, int indent) {
  std::ostringstream out;
  write_value(out, value, indent, 0);
  if (indent > 0) out << '\n';
  return out.str();
}

std::vector<std::string> csv_columns(int moment_degree) {
  std::vector<std::string> cols = {"tangency_defect",  "moment_residual_norm", "eq20_defect_norm",
                                   "eq10_defect_norm", "torsion_residual",     "mean_radius",
                                   "radial_relative_std", "is_sphere"};
  for (int n = 0; n <= moment_degree; ++n) cols.push_back("moment_residual_n" + std::to_string(n));
  return cols;
}

std::vector<double> csv_values(const DefectReport& r) {
  std::vector<double> v = {r.tangency_defect,  r.moment_residual_norm, r.eq20_defect_norm,
                           r.eq10_defect_norm, r.torsion_residual,     r.radial.mean,
                           r.radial.relative_std, r.is_sphere ? 1.0 : 0.0};
  v.insert(v.end(), r.moment_residual_by_degree.begin(), r.moment_residual_by_degree.end());
  return v;
}

}  // namespace hmsa

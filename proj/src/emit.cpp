#include "agmon/emit.hpp"

#include <cmath>
#include <cstdio>

namespace agmon {

std::string fmt17(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_number(double x) {
  if (std::isfinite(x)) return fmt17(x);
  return "\"" + fmt17(x) + "\"";
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

namespace {

template <class T, class F>
std::string join(const std::vector<T>& xs, F render) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += render(xs[i]);
  }
  return out;
}

}  // namespace

std::string spectrum_json(const std::vector<Eigenpair>& eigenpairs) {
  std::string out = "{\"energies\":[";
  out += join(eigenpairs, [](const Eigenpair& e) { return fmt17(e.energy); });
  out += "],\"residuals\":[";
  out += join(eigenpairs, [](const Eigenpair& e) { return fmt17(e.residual); });
  out += "],\"vectors\":[";
  out += join(eigenpairs, [](const Eigenpair& e) {
    return "[" + join(e.vector, [](double x) { return fmt17(x); }) + "]";
  });
  out += "]}\n";
  return out;
}

std::string report_json(const BoundReport& report) {
  std::string out = "{\"problem\":\"" + json_escape(report.problem) + "\",\"mode\":\"";
  out += mode_name(report.mode);
  out += "\",\"eigenpairs\":[";
  out += join(report.eigenpairs, [](const EigenpairSummary& s) {
    std::string e = "{\"energy\":" + fmt17(s.energy);
    e += ",\"violations\":" + std::to_string(s.violations);
    e += ",\"max_ratio\":" + json_number(s.max_ratio);
    e += std::string(",\"max_principle_holds\":") + (s.max_principle_holds ? "true" : "false");
    return e + "}";
  });
  out += "],\"violations\":[";
  out += join(report.violations, [](const BoundCheck& c) {
    std::string e = "{\"eigen_index\":" + std::to_string(c.eigen_index);
    e += ",\"u\":" + std::to_string(c.u) + ",\"v\":" + std::to_string(c.v);
    e += ",\"lhs\":" + fmt17(c.lhs);
    e += ",\"rho\":" + json_number(c.rho_value);
    e += ",\"rhs\":" + fmt17(c.rhs);
    e += ",\"ratio\":" + json_number(c.ratio);
    return e + "}";
  });
  out += "],\"tightness\":{";
  const auto& t = report.tightness;
  out += "\"decaying_pairs\":" + std::to_string(t.decaying_pairs);
  out += ",\"exact_matches\":" + std::to_string(t.exact_matches);
  out += std::string(",\"no_decaying_pairs\":") + (t.no_decaying_pairs ? "true" : "false");
  if (!t.no_decaying_pairs) {
    out += ",\"median\":" + fmt17(t.median);
    out += ",\"p90\":" + fmt17(t.p90);
    out += ",\"max\":" + fmt17(t.max);
  }
  out += "}}\n";
  return out;
}

}  // namespace agmon

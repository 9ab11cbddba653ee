#include "tempered/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tempered {

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Vec vec_from(const Json& j) {
  Vec v;
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

std::string distinctness_name(Distinctness d) {
  switch (d) {
    case Distinctness::kCertified: return "certified";
    case Distinctness::kAssumed: return "assumed";
    case Distinctness::kCollision: return "collision";
    case Distinctness::kUnknown: break;
  }
  return "unknown";
}

Distinctness distinctness_from(const std::string& s) {
  if (s == "certified") return Distinctness::kCertified;
  if (s == "assumed") return Distinctness::kAssumed;
  if (s == "collision") return Distinctness::kCollision;
  return Distinctness::kUnknown;
}

void dump_into(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_into(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms()) {
    Json e;
    e["x"] = vec_json(a.position);
    e["re"] = a.weight.real();
    e["im"] = a.weight.imag();
    atoms.push_back(std::move(e));
  }
  Json j;
  j["dim"] = mu.dimension();
  j["atoms"] = std::move(atoms);
  return j;
}

AtomicMeasure atomic_measure_from_json(const Json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  std::vector<Atom> atoms;
  for (const auto& e : j.at("atoms")) {
    Vec x = vec_from(e.at("x"));
    if (x.size() != dim) throw DimensionMismatch("atomic_measure_from_json: atom dimension");
    atoms.push_back({std::move(x), Complex(e.at("re").get<double>(), e.at("im").get<double>())});
  }
  return AtomicMeasure(dim, std::move(atoms));
}

Json to_json(const ProductMeasure& p) {
  Json factors = Json::array();
  for (const AtomicMeasure& f : p.factors()) factors.push_back(to_json(f));
  Json j;
  j["factors"] = std::move(factors);
  j["shift"] = vec_json(p.shift());
  j["scale"] = p.scale();
  j["distinctness"] = distinctness_name(p.distinctness());
  return j;
}

ProductMeasure product_measure_from_json(const Json& j) {
  std::vector<AtomicMeasure> factors;
  for (const auto& f : j.at("factors")) factors.push_back(atomic_measure_from_json(f));
  const Distinctness d =
      j.contains("distinctness") ? distinctness_from(j["distinctness"].get<std::string>()) : Distinctness::kUnknown;
  return ProductMeasure(std::move(factors), vec_from(j.at("shift")), j.at("scale").get<double>(), d);
}

Json to_json(const BlockMeasure& mu) {
  Json blocks = Json::array();
  for (const Block& b : mu.blocks()) {
    Json e;
    e["shift"] = vec_json(b.shift);
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, AtomicMeasure>) {
            e["kind"] = "atomic";
            e["payload"] = to_json(p);
          } else if constexpr (std::is_same_v<T, ProductMeasure>) {
            e["kind"] = "product";
            e["payload"] = to_json(p);
          } else {
            e["kind"] = "density";
            Json d;
            d["name"] = p.density.name;
            d["support_radius"] = p.density.support_radius;
            if (p.density.l1_norm) {
              d["l1_lower"] = p.density.l1_norm->lower;
              d["l1_upper"] = p.density.l1_norm->upper;
            }
            e["payload"] = std::move(d);
          }
        },
        b.payload);
    blocks.push_back(std::move(e));
  }
  Json j;
  j["dim"] = mu.dimension();
  j["support_radius"] = mu.support_radius();
  j["spacing"] = vec_json(mu.spacing());
  j["blocks"] = std::move(blocks);
  return j;
}

Json to_json(const Window& w) {
  Json j;
  j["lower"] = vec_json(w.lower());
  j["upper"] = vec_json(w.upper());
  return j;
}

Json to_json(const SupEstimate& s) {
  Json j;
  j["lower"] = s.lower;
  j["upper"] = s.upper_on_window;
  j["witness"] = vec_json(s.witness);
  j["grid_step"] = s.grid_step;
  j["window"] = to_json(s.window);
  j["log2_lower"] = s.log2_lower;
  j["log2_upper"] = s.log2_upper;
  if (s.analytic_upper) j["analytic_upper"] = *s.analytic_upper;
  j["evaluations"] = s.evaluations;
  return j;
}

Json to_json(const ClaimReport& r) {
  Json a = Json::array();
  for (const Claim& c : r.claims) {
    Json e;
    e["claim"] = c.id;
    e["anchor"] = c.anchor;
    e["relation"] = c.relation;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["tolerance"] = c.tolerance;
    e["status"] = c.pass ? "pass" : "fail";
    a.push_back(std::move(e));
  }
  return a;
}

Json to_json(const PlateauSchwartz& psi) {
  Json j;
  j["k"] = psi.k();
  j["c"] = vec_json(psi.c());
  j["dim"] = psi.dimension();
  return j;
}

PlateauSchwartz plateau_from_json(const Json& j) {
  return PlateauSchwartz(j.at("k").get<std::vector<int>>(), vec_from(j.at("c")), j.at("dim").get<std::size_t>());
}

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  return out;
}

void write_ft_samples_csv(std::ostream& os, const FTEvaluator& e, const Window& window, double step) {
  if (e.dimension() != 1 || window.dimension() != 1) {
    throw DimensionMismatch("write_ft_samples_csv: one-dimensional sources only");
  }
  if (!(step > 0.0)) throw std::invalid_argument("write_ft_samples_csv: step must be positive");
  os << "t,re,im,abs\n";
  const double lo = window.lower()[0], hi = window.upper()[0];
  if (!(hi > lo)) return;
  const double k0 = std::ceil(lo / step), k1 = std::floor(hi / step);
  for (double k = k0; k <= k1; k += 1.0) {
    const double t = k * step;
    const Complex v = e.value({t});
    os << format_double(t) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
       << format_double(std::abs(v)) << '\n';
  }
}

void write_density_csv(std::ostream& os, const CompactFunction& g, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("write_density_csv: need at least two samples");
  os << "x,g(x)\n";
  const double r = g.support_radius;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = -r + 2.0 * r * static_cast<double>(i) / static_cast<double>(samples - 1);
    os << format_double(x) << ',' << format_double(g(x)) << '\n';
  }
}

void write_seminorm_csv(std::ostream& os, const std::vector<SeminormEstimate>& rows) {
  os << "alpha,beta,value,method\n";
  for (const SeminormEstimate& s : rows) {
    os << '"' << s.alpha.str() << "\",\"" << s.beta.str() << "\"," << format_double(s.value) << ','
       << (s.method == DerivativeMethod::kExact ? "exact" : "finite-difference") << '\n';
  }
}

}  // namespace tempered

#include "kobest/config.hpp"

#include <cstdint>
#include <fstream>

namespace kobest {

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

Cx parse_complex(const json& j) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cx(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("expected a number or [re, im] pair");
}

CVec parse_cvec(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("expected a nonempty coordinate array");
  CVec v;
  for (const auto& e : j) v.push_back(parse_complex(e));
  return v;
}

Hyperplane parse_hyperplane(const json& j) {
  reject_unknown_keys(j, {"normal", "offset"}, "hyperplane");
  if (!j.contains("normal")) throw ConfigError("hyperplane: missing 'normal'");
  Cx offset = j.contains("offset") ? parse_complex(j.at("offset")) : Cx(0, 0);
  return Hyperplane(parse_cvec(j.at("normal")), offset);
}

PhiSpec parse_phi(const json& j) {
  reject_unknown_keys(j, {"kind", "params"}, "phi");
  PhiSpec phi;
  std::string kind = j.value("kind", "cone");
  std::vector<double> params;
  if (j.contains("params"))
    for (const auto& e : j.at("params")) params.push_back(e.get<double>());
  if (kind == "const") {
    phi.kind = PhiSpec::Kind::constant;
    phi.a = params.empty() ? 0.0 : params[0];
  } else if (kind == "cone") {
    phi.kind = PhiSpec::Kind::cone;
    phi.a = params.size() > 0 ? params[0] : 1.0;
    phi.b = params.size() > 1 ? params[1] : 2.0;
  } else if (kind == "step") {
    phi.kind = PhiSpec::Kind::step;
    phi.a = params.size() > 0 ? params[0] : 1.0;
    phi.b = params.size() > 1 ? params[1] : 0.5;
    phi.c = params.size() > 2 ? params[2] : 0.0;
  } else {
    throw ConfigError("phi: unknown kind '" + kind + "'");
  }
  return phi;
}

DomainPtr domain_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"kind", "radius", "radii", "center", "base", "factors", "hyperplanes",
                       "line", "window", "phi"},
                      "domain");
  if (!j.contains("kind")) throw ConfigError("domain: missing 'kind'");
  std::string kind = j.at("kind").get<std::string>();

  auto radius = [&]() {
    if (!j.contains("radius")) throw ConfigError("domain: '" + kind + "' needs 'radius'");
    return j.at("radius").get<double>();
  };
  auto radii = [&]() {
    if (!j.contains("radii")) throw ConfigError("domain: '" + kind + "' needs 'radii'");
    std::vector<double> rs;
    for (const auto& e : j.at("radii")) rs.push_back(e.get<double>());
    return rs;
  };

  if (kind == "disc") return make_disc(radius());
  if (kind == "punctured-disc") return make_punctured_disc(radius());
  if (kind == "halfplane") return make_halfplane();
  if (kind == "ball") {
    if (!j.contains("center")) throw ConfigError("domain: 'ball' needs 'center'");
    return make_ball(parse_cvec(j.at("center")), radius());
  }
  if (kind == "polydisc") return make_polydisc(radii());
  if (kind == "coordinate-disc-hull") return make_coordinate_disc_hull(radii());
  if (kind == "product") {
    if (!j.contains("factors")) throw ConfigError("domain: 'product' needs 'factors'");
    std::vector<DomainPtr> fs;
    for (const auto& e : j.at("factors")) fs.push_back(domain_from_json(e));
    return make_product(std::move(fs));
  }
  if (kind == "minus-hyperplanes") {
    if (!j.contains("base") || !j.contains("hyperplanes"))
      throw ConfigError("domain: 'minus-hyperplanes' needs 'base' and 'hyperplanes'");
    std::vector<Hyperplane> hs;
    for (const auto& e : j.at("hyperplanes")) hs.push_back(parse_hyperplane(e));
    return make_minus_hyperplanes(domain_from_json(j.at("base")), std::move(hs));
  }
  if (kind == "localized-removal") {
    if (!j.contains("base") || !j.contains("line") || !j.contains("window"))
      throw ConfigError("domain: 'localized-removal' needs 'base', 'line' and 'window'");
    const json& w = j.at("window");
    reject_unknown_keys(w, {"center", "radius", "remove_inside"}, "window");
    return make_localized_removal(domain_from_json(j.at("base")),
                                  parse_hyperplane(j.at("line")), parse_cvec(w.at("center")),
                                  w.at("radius").get<double>(), w.value("remove_inside", true));
  }
  if (kind == "hartogs") {
    if (!j.contains("base")) throw ConfigError("domain: 'hartogs' needs 'base'");
    PhiSpec phi = j.contains("phi") ? parse_phi(j.at("phi")) : PhiSpec{};
    return make_hartogs(domain_from_json(j.at("base")), phi);
  }
  throw ConfigError("domain: unknown kind '" + kind + "'");
}

std::string config_hash(const json& j) {
  std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kobest

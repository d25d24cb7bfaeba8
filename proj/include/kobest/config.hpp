#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kobest/domain.hpp"

namespace kobest {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejects keys outside the allowed set (strict configuration surface).
void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where);

Cx parse_complex(const json& j);
CVec parse_cvec(const json& j);
Hyperplane parse_hyperplane(const json& j);
PhiSpec parse_phi(const json& j);

// Domain tree: {kind, radius|radii, center, base, factors, hyperplanes:
// [{normal, offset}], line, window: {center, radius, remove_inside}, phi}.
DomainPtr domain_from_json(const json& j);

// FNV-1a over the canonical dump; used to derive output file names.
std::string config_hash(const json& j);

// Writes via a temporary file and renames, so failures leave no partial file.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace kobest

#pragma once

namespace kobest::cli {

// Exit codes: 0 success, 1 certified failure (e.g. quasi-geodesic
// verification fails), 2 configuration error.
int run(int argc, const char* const* argv);

}  // namespace kobest::cli

#pragma once

// The vendored single-header nlohmann/json (3.11.3) bundles its own forward
// declarations behind include guards, so pulling the full header here is the
// safe option.
#include <json.hpp>

// vendor_json.hpp — Single include point for the vendored nlohmann/json.

#pragma once

#include "json.hpp"

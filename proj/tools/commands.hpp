#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace kinlap::cli {

struct Command {
    std::string name;
    std::string description;
    Schema schema;
    std::function<int(const Config&)> run;  ///< 0 when every asserted check passed, 1 otherwise
};

const std::vector<Command>& commands();

}  // namespace kinlap::cli

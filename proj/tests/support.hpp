#pragma once

#include <string>

#include "domfilter/instance_io.hpp"
#include "domfilter/network.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(DOMFILTER_TEST_DATA) + "/" + name; }

inline domfilter::ConstraintNetwork load(const std::string& name) {
    return domfilter::read_instance_file(data_path(name));
}

// Variables x, y, z are 0, 1, 2.
inline domfilter::ConstraintNetwork net_a() { return load("net_a.txt"); }
inline domfilter::ConstraintNetwork net_b() { return load("net_b.txt"); }
inline domfilter::ConstraintNetwork net_d() { return load("net_d.txt"); }

}  // namespace testing

#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace slater {

using Scenario = std::map<std::string, std::string>;

// "key = value" lines, '#' starts a comment
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

// "1.5", "-2e-3i", "0.3-0.2i", "1+i"
std::complex<double> parse_complex(const std::string& s);

std::vector<std::string> target_names();

// args exclude the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slater

#pragma once
#include <iosfwd>
#include <map>
#include <string>

namespace pft {

// Plain "key = value" configuration, one pair per line; '#' starts a
// comment, blank lines are ignored.  Keys mirror the long command-line
// option names; explicit flags take precedence over file values.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> load_config(const std::string& path);

}  // namespace pft

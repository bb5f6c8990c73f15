#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqa {

// Errors surfaced by model assembly and (de)serialization.
struct ConflictingDefinition : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Visibility { Public, Protected, Private, Default };
enum class PassingMode { ByValue, ByReference };
enum class DataKind { Primitive, UserDefined };

const char* to_string(Visibility v);
const char* to_string(PassingMode m);
const char* to_string(DataKind k);

struct ParameterInfo {
    std::string name;
    std::string type_name;
    PassingMode passing_mode = PassingMode::ByValue;

    bool operator==(const ParameterInfo&) const = default;
};

// A call target as recorded at the call site. class_name may be empty
// (unqualified call, resolved against the owning class and free functions)
// or "?" when the receiver's type could not be determined.
struct CallTarget {
    std::string class_name;
    std::string method_name;

    bool operator==(const CallTarget&) const = default;
    auto operator<=>(const CallTarget&) const = default;
};

struct MethodInfo {
    std::string name;
    Visibility visibility = Visibility::Default;
    std::vector<ParameterInfo> parameters;
    std::string return_type;
    std::int64_t statement_count = 0;
    std::int64_t comment_line_count = 0;
    std::int64_t loc = 0;
    std::int64_t cyclomatic_complexity = 1;
    std::vector<CallTarget> invoked_targets;
    std::vector<std::string> accessed_members;
    bool overrides_ancestor = false;
    std::int64_t fan_in = 0;
    std::int64_t fan_out = 0;

    bool operator==(const MethodInfo&) const = default;
};

struct DataVariableInfo {
    std::string name;
    std::string type_name;
    DataKind kind = DataKind::Primitive;
    Visibility visibility = Visibility::Default;
    bool is_static = false;
    bool is_constant = false;

    bool operator==(const DataVariableInfo&) const = default;
};

struct ClassInfo {
    std::string name;
    Visibility visibility = Visibility::Default;
    std::optional<std::string> ancestor_name;
    std::string package_name;  // empty = the default package
    std::vector<MethodInfo> methods;
    std::vector<DataVariableInfo> data_members;
    std::int64_t statement_count = 0;
    std::int64_t comment_line_count = 0;

    std::string qualified_name() const {
        return package_name.empty() ? name : package_name + "." + name;
    }

    bool operator==(const ClassInfo&) const = default;
};

struct PackageInfo {
    std::string name;
    std::int64_t afferent_couplings = 0;
    std::int64_t efferent_couplings = 0;

    bool operator==(const PackageInfo&) const = default;
};

struct SystemSnapshot {
    std::string system_name;
    std::string version_label;
    std::optional<std::string> release_date;  // ISO date, YYYY-MM-DD
    std::vector<PackageInfo> packages;
    std::vector<ClassInfo> classes;
    std::vector<MethodInfo> free_functions;
    std::int64_t total_loc = 0;

    bool operator==(const SystemSnapshot&) const = default;
};

// Sorts every entity list into the canonical (lexicographic) order used by
// the serializer. Parameter order is semantic and is left untouched.
void canonicalize(SystemSnapshot& snapshot);

// Structural equality up to entity ordering.
bool structurally_equal(SystemSnapshot a, SystemSnapshot b);

// Returns a description per violated invariant; empty means valid.
std::vector<std::string> validate_snapshot(const SystemSnapshot& snapshot);

// Distinct invoked targets excluding the method itself (self-recursion,
// qualified or not, does not count toward fan-out).
std::int64_t distinct_call_fanout(const MethodInfo& method, const std::string& owner);

// Unions per-file fragments into one snapshot. Fragments must agree on
// system_name/version_label; identical duplicate classes collapse, differing
// ones raise ConflictingDefinition.
SystemSnapshot merge(const std::vector<SystemSnapshot>& partials);

// Interchange format, line oriented; see serialize() for the grammar.
std::string serialize(const SystemSnapshot& snapshot);
SystemSnapshot parse_snapshot(const std::string& text);

void save_snapshot(const SystemSnapshot& snapshot, const std::string& path);
SystemSnapshot load_snapshot(const std::string& path);

// Field escaping used by the interchange format (space/newline/backslash).
std::string escape_field(const std::string& s);
std::string unescape_field(const std::string& s);

}  // namespace sqa

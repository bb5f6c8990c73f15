#include "sqa/code_model.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace sqa {

const char* to_string(Visibility v) {
    switch (v) {
        case Visibility::Public: return "public";
        case Visibility::Protected: return "protected";
        case Visibility::Private: return "private";
        case Visibility::Default: return "default";
    }
    return "default";
}

const char* to_string(PassingMode m) {
    return m == PassingMode::ByValue ? "by_value" : "by_reference";
}

const char* to_string(DataKind k) {
    return k == DataKind::Primitive ? "primitive" : "user_defined";
}

std::string escape_field(const std::string& s) {
    if (s.empty()) return "\\e";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case ' ': out += "\\s"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape_field(const std::string& s) {
    if (s == "\\e") return "";
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (i + 1 >= s.size()) throw MalformedModel("dangling escape in field: " + s);
        switch (s[++i]) {
            case '\\': out += '\\'; break;
            case 's': out += ' '; break;
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            case 'e': break;
            default: throw MalformedModel("unknown escape in field: " + s);
        }
    }
    return out;
}

namespace {

std::tuple<std::string, size_t, std::vector<std::string>> method_key(const MethodInfo& m) {
    std::vector<std::string> types;
    types.reserve(m.parameters.size());
    for (const auto& p : m.parameters) types.push_back(p.type_name);
    return {m.name, m.parameters.size(), types};
}

}  // namespace

void canonicalize(SystemSnapshot& snapshot) {
    auto sort_method_innards = [](MethodInfo& m) {
        std::sort(m.invoked_targets.begin(), m.invoked_targets.end());
        std::sort(m.accessed_members.begin(), m.accessed_members.end());
    };
    std::sort(snapshot.packages.begin(), snapshot.packages.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    std::sort(snapshot.classes.begin(), snapshot.classes.end(), [](const auto& a, const auto& b) {
        return std::tie(a.package_name, a.name) < std::tie(b.package_name, b.name);
    });
    for (auto& c : snapshot.classes) {
        std::sort(c.data_members.begin(), c.data_members.end(),
                  [](const auto& a, const auto& b) { return a.name < b.name; });
        std::sort(c.methods.begin(), c.methods.end(),
                  [](const auto& a, const auto& b) { return method_key(a) < method_key(b); });
        for (auto& m : c.methods) sort_method_innards(m);
    }
    std::sort(snapshot.free_functions.begin(), snapshot.free_functions.end(),
              [](const auto& a, const auto& b) { return method_key(a) < method_key(b); });
    for (auto& f : snapshot.free_functions) sort_method_innards(f);
}

bool structurally_equal(SystemSnapshot a, SystemSnapshot b) {
    canonicalize(a);
    canonicalize(b);
    return a == b;
}

std::int64_t distinct_call_fanout(const MethodInfo& method, const std::string& owner) {
    std::set<CallTarget> distinct(method.invoked_targets.begin(), method.invoked_targets.end());
    distinct.erase({owner, method.name});
    distinct.erase({"", method.name});
    return static_cast<std::int64_t>(distinct.size());
}

std::vector<std::string> validate_snapshot(const SystemSnapshot& snapshot) {
    std::vector<std::string> violations;
    std::unordered_set<std::string> package_names;
    for (const auto& p : snapshot.packages) {
        package_names.insert(p.name);
        if (p.afferent_couplings < 0 || p.efferent_couplings < 0)
            violations.push_back("negative coupling count in package: " + p.name);
    }

    auto check_method = [&](const MethodInfo& m, const std::string& owner) {
        std::string id = owner.empty() ? m.name : owner + "." + m.name;
        if (m.cyclomatic_complexity < 1)
            violations.push_back("cyclomatic complexity below 1: " + id);
        if (m.statement_count < 0 || m.comment_line_count < 0 || m.loc < 0 || m.fan_in < 0 ||
            m.fan_out < 0)
            violations.push_back("negative count in method: " + id);
        if (m.fan_out != distinct_call_fanout(m, owner))
            violations.push_back("fan_out disagrees with distinct invoked targets: " + id);
        for (const auto& p : m.parameters)
            if (p.type_name.empty()) violations.push_back("empty parameter type in method: " + id);
    };

    std::unordered_set<std::string> declared;
    for (const auto& c : snapshot.classes) declared.insert(c.name);

    std::set<std::pair<std::string, std::string>> seen_classes;
    std::unordered_map<std::string, std::string> ancestor_of;
    for (const auto& c : snapshot.classes) {
        if (!c.package_name.empty() && !package_names.count(c.package_name))
            violations.push_back("unknown package '" + c.package_name + "' for class " + c.name);
        if (!seen_classes.insert({c.package_name, c.name}).second)
            violations.push_back("duplicate class: " + c.qualified_name());
        if (c.ancestor_name) {
            if (*c.ancestor_name == c.name)
                violations.push_back("self-inheritance: " + c.name);
            else
                ancestor_of[c.name] = *c.ancestor_name;
        }
        if (c.statement_count < 0 || c.comment_line_count < 0)
            violations.push_back("negative count in class: " + c.name);
        for (const auto& m : c.methods) check_method(m, c.name);
        for (const auto& d : c.data_members)
            if (d.kind == DataKind::Primitive && declared.count(d.type_name))
                violations.push_back("member '" + d.name + "' of " + c.name +
                                     " has class type but primitive kind");
    }
    for (const auto& f : snapshot.free_functions) check_method(f, "");
    if (snapshot.total_loc < 0) violations.push_back("negative total_loc");

    // Inheritance must form a forest.
    std::unordered_set<std::string> reported;
    for (const auto& [start, _] : ancestor_of) {
        if (reported.count(start)) continue;
        std::unordered_set<std::string> path;
        std::string cur = start;
        while (ancestor_of.count(cur)) {
            if (!path.insert(cur).second) {
                std::string desc = "inheritance cycle:";
                for (const auto& n : path) {
                    desc += " " + n;
                    reported.insert(n);
                }
                violations.push_back(desc);
                break;
            }
            cur = ancestor_of.at(cur);
        }
    }
    return violations;
}

SystemSnapshot merge(const std::vector<SystemSnapshot>& partials) {
    if (partials.empty()) return {};
    SystemSnapshot out;
    out.system_name = partials.front().system_name;
    out.version_label = partials.front().version_label;
    out.release_date = partials.front().release_date;

    std::map<std::string, PackageInfo> packages;
    std::map<std::pair<std::string, std::string>, ClassInfo> classes;

    for (const auto& frag : partials) {
        if (frag.system_name != out.system_name || frag.version_label != out.version_label)
            throw ConflictingDefinition("fragments disagree on system/version: " +
                                        frag.system_name + " " + frag.version_label);
        for (const auto& p : frag.packages) {
            auto [it, fresh] = packages.emplace(p.name, p);
            if (!fresh) {
                it->second.afferent_couplings += p.afferent_couplings;
                it->second.efferent_couplings += p.efferent_couplings;
            }
        }
        for (const auto& c : frag.classes) {
            auto key = std::make_pair(c.package_name, c.name);
            auto it = classes.find(key);
            if (it == classes.end()) {
                classes.emplace(key, c);
            } else {
                ClassInfo a = it->second, b = c;
                SystemSnapshot sa, sb;
                sa.classes = {std::move(a)};
                sb.classes = {std::move(b)};
                canonicalize(sa);
                canonicalize(sb);
                if (!(sa.classes.front() == sb.classes.front()))
                    throw ConflictingDefinition("class defined differently in two fragments: " +
                                                c.qualified_name());
            }
        }
        out.free_functions.insert(out.free_functions.end(), frag.free_functions.begin(),
                                  frag.free_functions.end());
        out.total_loc += frag.total_loc;
    }
    for (auto& [name, p] : packages) out.packages.push_back(std::move(p));
    for (auto& [key, c] : classes) out.classes.push_back(std::move(c));
    // A fragment merged with nothing else keeps its own total_loc; duplicate
    // identical class definitions were collapsed above but their files' LOC
    // were already summed, which is what per-file extraction produces.
    if (partials.size() == 1) out.total_loc = partials.front().total_loc;
    return out;
}

namespace {

void write_method(std::ostream& os, const char* tag, const MethodInfo& m) {
    os << tag << ' ' << escape_field(m.name) << ' ' << to_string(m.visibility) << ' '
       << escape_field(m.return_type) << ' ' << m.loc << ' ' << m.statement_count << ' '
       << m.comment_line_count << ' ' << m.cyclomatic_complexity << ' '
       << (m.overrides_ancestor ? 1 : 0) << ' ' << m.fan_in << ' ' << m.fan_out << '\n';
    for (const auto& p : m.parameters)
        os << "param " << escape_field(p.name) << ' ' << escape_field(p.type_name) << ' '
           << to_string(p.passing_mode) << '\n';
    for (const auto& t : m.invoked_targets)
        os << "call " << (t.class_name.empty() ? "-" : escape_field(t.class_name)) << ' '
           << escape_field(t.method_name) << '\n';
    for (const auto& a : m.accessed_members) os << "use " << escape_field(a) << '\n';
}

}  // namespace

std::string serialize(const SystemSnapshot& snapshot) {
    SystemSnapshot s = snapshot;
    canonicalize(s);
    std::ostringstream os;
    os << "sqa-model 1\n";
    os << "system " << escape_field(s.system_name) << ' ' << escape_field(s.version_label) << ' '
       << (s.release_date ? escape_field(*s.release_date) : "-") << '\n';
    os << "loc " << s.total_loc << '\n';
    for (const auto& p : s.packages)
        os << "package " << escape_field(p.name) << ' ' << p.afferent_couplings << ' '
           << p.efferent_couplings << '\n';
    for (const auto& c : s.classes) {
        os << "class " << escape_field(c.name) << ' '
           << (c.package_name.empty() ? "-" : escape_field(c.package_name)) << ' '
           << to_string(c.visibility) << ' '
           << (c.ancestor_name ? escape_field(*c.ancestor_name) : "-") << ' '
           << c.statement_count << ' ' << c.comment_line_count << '\n';
        for (const auto& d : c.data_members) {
            std::string quals;
            if (d.is_static) quals = "static";
            if (d.is_constant) quals += quals.empty() ? "constant" : ",constant";
            os << "var " << escape_field(d.name) << ' ' << escape_field(d.type_name) << ' '
               << to_string(d.kind) << ' ' << to_string(d.visibility) << ' '
               << (quals.empty() ? "-" : quals) << '\n';
        }
        for (const auto& m : c.methods) write_method(os, "method", m);
    }
    for (const auto& f : s.free_functions) write_method(os, "func", f);
    return os.str();
}

namespace {

struct LineParser {
    std::istringstream stream;
    int line_no = 0;
    std::vector<std::string> fields;

    explicit LineParser(const std::string& text) : stream(text) {}

    bool next() {
        std::string line;
        while (std::getline(stream, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            fields.clear();
            std::istringstream ls(line);
            std::string f;
            while (ls >> f) fields.push_back(f);
            if (!fields.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw MalformedModel("line " + std::to_string(line_no) + ": " + why);
    }

    void expect_fields(size_t n) const {
        if (fields.size() != n)
            fail("expected " + std::to_string(n) + " fields in '" + fields[0] + "' record, got " +
                 std::to_string(fields.size()));
    }

    std::int64_t integer(size_t idx, const char* what, std::int64_t min_value = 0) const {
        try {
            size_t pos = 0;
            std::int64_t v = std::stoll(fields.at(idx), &pos);
            if (pos != fields[idx].size()) fail(std::string("trailing junk in ") + what);
            if (v < min_value)
                fail(std::string(what) + " below " + std::to_string(min_value) + ": " +
                     fields[idx]);
            return v;
        } catch (const MalformedModel&) {
            throw;
        } catch (const std::exception&) {
            fail(std::string("not an integer for ") + what + ": " + fields.at(idx));
        }
    }

    std::string text(size_t idx) const { return unescape_field(fields.at(idx)); }

    std::optional<std::string> optional_text(size_t idx) const {
        if (fields.at(idx) == "-") return std::nullopt;
        return unescape_field(fields[idx]);
    }
};

Visibility parse_visibility(const LineParser& lp, const std::string& s) {
    if (s == "public") return Visibility::Public;
    if (s == "protected") return Visibility::Protected;
    if (s == "private") return Visibility::Private;
    if (s == "default") return Visibility::Default;
    lp.fail("unknown visibility: " + s);
}

}  // namespace

SystemSnapshot parse_snapshot(const std::string& text) {
    LineParser lp(text);
    if (!lp.next() || lp.fields[0] != "sqa-model") throw MalformedModel("missing sqa-model header");
    SystemSnapshot snap;
    bool have_system = false;
    ClassInfo* cur_class = nullptr;
    MethodInfo* cur_method = nullptr;

    while (lp.next()) {
        const std::string& tag = lp.fields[0];
        if (tag == "system") {
            lp.expect_fields(4);
            snap.system_name = lp.text(1);
            snap.version_label = lp.text(2);
            snap.release_date = lp.optional_text(3);
            have_system = true;
        } else if (tag == "loc") {
            lp.expect_fields(2);
            snap.total_loc = lp.integer(1, "total_loc");
        } else if (tag == "package") {
            lp.expect_fields(4);
            PackageInfo p;
            p.name = lp.text(1);
            p.afferent_couplings = lp.integer(2, "afferent_couplings");
            p.efferent_couplings = lp.integer(3, "efferent_couplings");
            snap.packages.push_back(std::move(p));
        } else if (tag == "class") {
            lp.expect_fields(7);
            ClassInfo c;
            c.name = lp.text(1);
            c.package_name = lp.optional_text(2).value_or("");
            c.visibility = parse_visibility(lp, lp.fields[3]);
            c.ancestor_name = lp.optional_text(4);
            c.statement_count = lp.integer(5, "statement_count");
            c.comment_line_count = lp.integer(6, "comment_line_count");
            snap.classes.push_back(std::move(c));
            cur_class = &snap.classes.back();
            cur_method = nullptr;
        } else if (tag == "var") {
            lp.expect_fields(6);
            if (!cur_class) lp.fail("var record outside a class");
            DataVariableInfo d;
            d.name = lp.text(1);
            d.type_name = lp.text(2);
            if (lp.fields[3] == "primitive")
                d.kind = DataKind::Primitive;
            else if (lp.fields[3] == "user_defined")
                d.kind = DataKind::UserDefined;
            else
                lp.fail("unknown data kind: " + lp.fields[3]);
            d.visibility = parse_visibility(lp, lp.fields[4]);
            if (lp.fields[5] != "-") {
                std::istringstream qs(lp.fields[5]);
                std::string q;
                while (std::getline(qs, q, ',')) {
                    if (q == "static")
                        d.is_static = true;
                    else if (q == "constant")
                        d.is_constant = true;
                    else
                        lp.fail("unknown qualifier: " + q);
                }
            }
            cur_class->data_members.push_back(std::move(d));
        } else if (tag == "method" || tag == "func") {
            lp.expect_fields(11);
            MethodInfo m;
            m.name = lp.text(1);
            m.visibility = parse_visibility(lp, lp.fields[2]);
            m.return_type = lp.text(3);
            m.loc = lp.integer(4, "loc");
            m.statement_count = lp.integer(5, "statement_count");
            m.comment_line_count = lp.integer(6, "comment_line_count");
            m.cyclomatic_complexity = lp.integer(7, "cyclomatic_complexity", 1);
            m.overrides_ancestor = lp.integer(8, "overrides") != 0;
            m.fan_in = lp.integer(9, "fan_in");
            m.fan_out = lp.integer(10, "fan_out");
            if (tag == "method") {
                if (!cur_class) lp.fail("method record outside a class");
                cur_class->methods.push_back(std::move(m));
                cur_method = &cur_class->methods.back();
            } else {
                snap.free_functions.push_back(std::move(m));
                cur_method = &snap.free_functions.back();
                cur_class = nullptr;
            }
        } else if (tag == "param") {
            lp.expect_fields(4);
            if (!cur_method) lp.fail("param record outside a method");
            ParameterInfo p;
            p.name = lp.text(1);
            p.type_name = lp.text(2);
            if (lp.fields[3] == "by_value")
                p.passing_mode = PassingMode::ByValue;
            else if (lp.fields[3] == "by_reference")
                p.passing_mode = PassingMode::ByReference;
            else
                lp.fail("unknown passing mode: " + lp.fields[3]);
            if (p.type_name.empty()) lp.fail("empty parameter type");
            cur_method->parameters.push_back(std::move(p));
        } else if (tag == "call") {
            lp.expect_fields(3);
            if (!cur_method) lp.fail("call record outside a method");
            cur_method->invoked_targets.push_back(
                {lp.optional_text(1).value_or(""), lp.text(2)});
        } else if (tag == "use") {
            lp.expect_fields(2);
            if (!cur_method) lp.fail("use record outside a method");
            cur_method->accessed_members.push_back(lp.text(1));
        } else {
            lp.fail("unknown record tag: " + tag);
        }
    }
    if (!have_system) throw MalformedModel("missing system record");
    return snap;
}

void save_snapshot(const SystemSnapshot& snapshot, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedModel("cannot open for writing: " + path);
    out << serialize(snapshot);
}

SystemSnapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedModel("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_snapshot(buf.str());
}

}  // namespace sqa

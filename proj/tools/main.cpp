#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sqa/ahp.hpp"
#include "sqa/code_model.hpp"
#include "sqa/extractor.hpp"
#include "sqa/metrics.hpp"
#include "sqa/quality_model.hpp"
#include "sqa/report.hpp"
#include "sqa/risk_profile.hpp"
#include "sqa/trend.hpp"

namespace fs = std::filesystem;
using namespace sqa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitWarnings = 2;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << text;
}

std::map<std::string, Language> parse_lang_map(const std::string& spec) {
    std::map<std::string, Language> map;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad --lang-map entry (want ext=lang): " + item);
        std::string ext = item.substr(0, eq);
        std::string lang = item.substr(eq + 1);
        if (lang == "c" || lang == "c_like")
            map[ext] = Language::CLike;
        else if (lang == "java" || lang == "java_like")
            map[ext] = Language::JavaLike;
        else
            throw std::runtime_error("unknown language in --lang-map: " + lang);
    }
    return map;
}

QualityHierarchy resolve_profile(const std::string& name_or_path) {
    auto profiles = builtin_profiles();
    if (auto it = profiles.find(name_or_path); it != profiles.end()) return it->second;
    if (fs::exists(name_or_path)) return load_hierarchy(name_or_path);
    std::string available;
    for (const auto& [n, h] : profiles) available += (available.empty() ? "" : ", ") + n;
    throw std::runtime_error("unknown profile '" + name_or_path +
                             "'; built-in profiles: " + available);
}

int cmd_extract(const std::vector<std::string>& roots, const std::string& system_name,
                const std::string& version, const std::string& date, const std::string& lang_map,
                const std::string& out_path, const std::string& warnings_path) {
    std::map<std::string, Language> overrides = parse_lang_map(lang_map);

    std::vector<fs::path> files;
    for (const auto& root : roots) {
        if (!fs::exists(root)) {
            std::cerr << "error: no such input: " << root << "\n";
            return kExitFatal;
        }
        if (fs::is_regular_file(root)) {
            files.push_back(root);
            continue;
        }
        for (const auto& entry : fs::recursive_directory_iterator(root))
            if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<SystemSnapshot> fragments;
    std::vector<ExtractionWarning> warnings;
    for (const auto& path : files) {
        std::string ext = path.extension().string();
        if (!ext.empty() && ext[0] == '.') ext = ext.substr(1);
        Language lang;
        if (auto it = overrides.find(ext); it != overrides.end())
            lang = it->second;
        else if (!language_for_extension(ext, lang))
            continue;  // not a source file

        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        SourceUnit unit{path.string(), lang, buf.str()};
        try {
            ExtractionResult r = extract_unit(unit);
            r.fragment.system_name = system_name;
            r.fragment.version_label = version;
            if (!date.empty()) r.fragment.release_date = date;
            fragments.push_back(std::move(r.fragment));
            warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
        } catch (const UnterminatedConstruct& e) {
            warnings.push_back({path.string(), e.line, e.what()});
        }
    }

    SystemSnapshot merged = merge(fragments);
    merged.system_name = system_name;
    merged.version_label = version;
    if (!date.empty()) merged.release_date = date;
    SystemSnapshot resolved = resolve_couplings(merged, &warnings);
    save_snapshot(resolved, out_path);

    std::ostringstream wlog;
    for (const auto& w : warnings)
        wlog << w.file << ":" << w.line << ": " << w.reason << "\n";
    if (!warnings_path.empty()) {
        std::ofstream wf(warnings_path, std::ios::binary);
        wf << wlog.str();
    } else {
        std::cerr << wlog.str();
    }
    return warnings.empty() ? kExitOk : kExitWarnings;
}

int cmd_score(const std::vector<std::string>& snapshot_paths, const std::string& profile_name,
              const std::string& normalize, OutputFormat format, const std::string& out_path) {
    QualityHierarchy profile = resolve_profile(profile_name);
    NormalizationScheme scheme = NormalizationScheme::BaselineRatio;
    if (normalize == "minmax")
        scheme = NormalizationScheme::CorpusMinMax;
    else if (normalize != "baseline")
        throw std::runtime_error("unknown normalization scheme: " + normalize);

    std::vector<SystemSnapshot> snapshots;
    std::vector<MetricVector> raw;
    for (const auto& p : snapshot_paths) {
        snapshots.push_back(load_snapshot(p));
        raw.push_back(system_metrics(snapshots.back()));
    }
    auto normalized = normalize_metrics(raw, scheme, profile.referenced_metrics());

    std::vector<EvaluationResult> evals;
    for (size_t i = 0; i < snapshots.size(); ++i) {
        EvaluationResult e = evaluate(profile, normalized[i]);
        e.scheme = to_string(scheme);
        e.version_label = snapshots[i].version_label;
        evals.push_back(std::move(e));
    }

    std::vector<ReportTable> tables;
    ReportTable chars;
    chars.title = "characteristics profile=" + profile.profile_name +
                  " scheme=" + to_string(scheme);
    chars.headers = {"version"};
    for (const auto& [name, v] : evals.front().characteristic) chars.headers.push_back(name);
    for (const auto& e : evals) {
        std::vector<std::string> row = {e.version_label};
        for (const auto& [name, v] : e.characteristic) row.push_back(format_number(v));
        chars.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(chars));

    if (!evals.front().subcharacteristic.empty()) {
        ReportTable subs;
        subs.title = "subcharacteristics profile=" + profile.profile_name +
                     " scheme=" + to_string(scheme);
        subs.headers = {"version"};
        for (const auto& [name, v] : evals.front().subcharacteristic) subs.headers.push_back(name);
        for (const auto& e : evals) {
            std::vector<std::string> row = {e.version_label};
            for (const auto& [name, v] : e.subcharacteristic) row.push_back(format_number(v));
            subs.rows.push_back(std::move(row));
        }
        tables.push_back(std::move(subs));
    }

    ReportTable attrs;
    attrs.title = "attributes profile=" + profile.profile_name + " scheme=" + to_string(scheme);
    attrs.headers = {"version"};
    for (const auto& [name, v] : evals.front().attribute) attrs.headers.push_back(name);
    for (const auto& e : evals) {
        std::vector<std::string> row = {e.version_label};
        for (const auto& [name, v] : e.attribute) row.push_back(format_number(v));
        attrs.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(attrs));

    if (evals.size() >= 2) {
        ReportTable series_table;
        series_table.title = "trend profile=" + profile.profile_name +
                             " scheme=" + to_string(scheme);
        series_table.headers = {"subject", "version", "raw", "normalized"};
        for (const auto& [name, v] : evals.front().characteristic) {
            TrendSeries s = build_series(evals, name);
            for (size_t i = 0; i < s.versions.size(); ++i)
                series_table.rows.push_back({s.subject, s.versions[i], format_number(s.raw[i]),
                                             format_number(s.normalized[i])});
        }
        tables.push_back(std::move(series_table));

        bool have_all = true;
        for (const char* c : {"functionality", "efficiency", "maintainability", "portability"})
            if (!evals.front().characteristic.count(c)) have_all = false;
        if (have_all) {
            std::vector<TrendSeries> all;
            for (const auto& [name, v] : evals.front().characteristic)
                all.push_back(build_series(evals, name));
            ConformanceReport report = conformance(all);
            ReportTable ct;
            ct.title = "conformance profile=" + profile.profile_name;
            ct.headers = {"characteristic", "expected", "observed", "conforms", "note"};
            for (const auto& v : report.verdicts)
                ct.rows.push_back({v.characteristic, to_string(v.expected), to_string(v.observed),
                                   v.conforms ? "yes" : v.noteworthy ? "noteworthy" : "no",
                                   v.narrative});
            tables.push_back(std::move(ct));
        }
    }

    write_output(render_all(tables, format), out_path);
    return kExitOk;
}

int cmd_rank(const std::vector<std::string>& snapshot_paths, const std::string& sub_name,
             const std::string& bands_path, OutputFormat format, const std::string& out_path) {
    MaintainabilitySub sub;
    if (sub_name == "changeability")
        sub = MaintainabilitySub::Changeability;
    else if (sub_name == "analysability")
        sub = MaintainabilitySub::Analysability;
    else
        throw std::runtime_error("unknown sub-characteristic: " + sub_name);

    BandConfig config;
    std::string bands_id = "builtin";
    if (!bands_path.empty()) {
        config = load_band_config(bands_path);
        bands_id = bands_path;
    }

    std::vector<SystemSnapshot> systems;
    for (const auto& p : snapshot_paths) systems.push_back(load_snapshot(p));
    auto ranking = rank_systems(systems, sub, config);

    std::vector<ReportTable> tables;
    ReportTable rt;
    rt.title = std::string("ranking sub=") + to_string(sub) + " bands=" + bands_id +
               " penalty=linear-band-rank";
    rt.headers = {"rank", "system", "score", "volume", "complexity", "coupling"};
    for (size_t i = 0; i < ranking.size(); ++i) {
        const auto& r = ranking[i];
        rt.rows.push_back({std::to_string(i + 1), r.name, format_number(r.score),
                           format_number(r.volume_penalty), format_number(r.complexity_penalty),
                           format_number(r.coupling_penalty)});
    }
    tables.push_back(std::move(rt));

    // Per-system risk profiles for the three attributes.
    ReportTable pt;
    pt.title = std::string("risk-profiles bands=") + bands_id;
    pt.headers = {"system", "metric", "very_low", "low", "moderate", "high", "very_high"};
    for (const auto& s : systems) {
        for (const auto& [metric, scheme] :
             {std::pair<std::string, const RiskBandScheme*>{"LOC", &config.loc},
              {"CC", &config.cc},
              {"I", &config.instability}}) {
            RiskProfile p = build_profile(s, metric, *scheme);
            std::vector<std::string> row = {s.system_name, metric};
            for (int l = 0; l < kRiskLevelCount; ++l)
                row.push_back(format_number(p.loc_percentage.at(static_cast<RiskLevel>(l))));
            pt.rows.push_back(std::move(row));
        }
    }
    tables.push_back(std::move(pt));

    write_output(render_all(tables, format), out_path);
    return kExitOk;
}

struct JudgmentFile {
    std::vector<std::string> criteria;
    std::vector<Judgment> judgments;
};

JudgmentFile parse_judgment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open judgment file: " + path);
    JudgmentFile jf;
    std::string line;
    int line_no = 0;
    auto index_of = [&](const std::string& name) -> size_t {
        for (size_t i = 0; i < jf.criteria.size(); ++i)
            if (jf.criteria[i] == name) return i;
        throw std::runtime_error("line " + std::to_string(line_no) + ": unknown criterion " +
                                 name);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "criteria") {
            std::string name;
            while (ls >> name) jf.criteria.push_back(name);
        } else if (tag == "judge") {
            std::string a, b, ratio_text;
            if (!(ls >> a >> b >> ratio_text))
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": expected 'judge <a> <b> <ratio>'");
            double ratio;
            if (auto slash = ratio_text.find('/'); slash != std::string::npos) {
                double num = std::stod(ratio_text.substr(0, slash));
                double den = std::stod(ratio_text.substr(slash + 1));
                ratio = num / den;
            } else {
                ratio = std::stod(ratio_text);
            }
            jf.judgments.push_back({index_of(a), index_of(b), ratio});
        } else {
            throw std::runtime_error("line " + std::to_string(line_no) + ": unknown directive " +
                                     tag);
        }
    }
    return jf;
}

int cmd_ahp(const std::string& judgment_path, OutputFormat format, const std::string& out_path,
            const std::string& fragment_path) {
    JudgmentFile jf = parse_judgment_file(judgment_path);
    std::string warning;
    WeightVector w = weights_from_judgments(jf.criteria, jf.judgments, &warning);

    ReportTable t;
    t.title = "ahp-weights source=" + judgment_path;
    t.headers = {"criterion", "weight"};
    for (size_t i = 0; i < w.labels.size(); ++i)
        t.rows.push_back({w.labels[i], format_number(w.weights[i])});
    t.rows.push_back({"lambda_max", format_number(w.lambda_max)});
    t.rows.push_back({"consistency_ratio", format_number(w.consistency_ratio)});
    std::string output = render(t, format);
    if (!warning.empty()) output += "warning: " + warning + "\n";
    write_output(output, out_path);

    if (!fragment_path.empty()) {
        std::ofstream frag(fragment_path, std::ios::binary);
        if (!frag) throw std::runtime_error("cannot write fragment: " + fragment_path);
        frag.precision(17);
        for (size_t i = 0; i < w.labels.size(); ++i)
            frag << "attribute " << w.labels[i] << ' ' << w.weights[i] << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sqa - source code quality analyzer"};
    app.require_subcommand(1);

    // extract
    auto* extract = app.add_subcommand("extract", "extract a snapshot from source trees");
    std::vector<std::string> roots;
    std::string system_name = "system", version = "0", date, lang_map, out_path, warnings_path;
    extract->add_option("roots", roots, "source roots")->required();
    extract->add_option("--system", system_name, "system name");
    extract->add_option("--version-label", version, "version label");
    extract->add_option("--date", date, "release date (YYYY-MM-DD)");
    extract->add_option("--lang-map", lang_map, "extension overrides, ext=lang,...");
    extract->add_option("--out", out_path, "snapshot output path")->required();
    extract->add_option("--warnings", warnings_path, "warning log path (default: stderr)");

    // score
    auto* score = app.add_subcommand("score", "evaluate quality characteristics");
    std::vector<std::string> score_snapshots;
    std::string profile = "oo-trend", normalize = "baseline", format_name = "table",
                score_out;
    score->add_option("snapshots", score_snapshots, "snapshot files, oldest first")->required();
    score->add_option("--profile", profile, "built-in profile name or hierarchy file");
    score->add_option("--normalize", normalize, "baseline | minmax");
    score->add_option("--format", format_name, "table | csv | structured");
    score->add_option("--out", score_out, "output path (default: stdout)");

    // rank
    auto* rank = app.add_subcommand("rank", "rank systems by maintainability sub-characteristic");
    std::vector<std::string> rank_snapshots;
    std::string sub_name = "changeability", bands_path, rank_format = "table", rank_out;
    rank->add_option("snapshots", rank_snapshots, "snapshot files")->required();
    rank->add_option("--sub", sub_name, "changeability | analysability");
    rank->add_option("--bands", bands_path, "band scheme configuration file");
    rank->add_option("--format", rank_format, "table | csv | structured");
    rank->add_option("--out", rank_out, "output path (default: stdout)");

    // ahp
    auto* ahp = app.add_subcommand("ahp", "derive weights from pairwise judgments");
    std::string judgment_path, ahp_format = "table", ahp_out, fragment_path;
    ahp->add_option("judgments", judgment_path, "judgment file")->required();
    ahp->add_option("--format", ahp_format, "table | csv | structured");
    ahp->add_option("--out", ahp_out, "output path (default: stdout)");
    ahp->add_option("--fragment", fragment_path, "write weights as a hierarchy fragment");

    // export-profile
    auto* exp = app.add_subcommand("export-profile", "print a built-in profile as a config file");
    std::string export_name, export_out;
    exp->add_option("name", export_name, "profile name")->required();
    exp->add_option("--out", export_out, "output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed())
            return cmd_extract(roots, system_name, version, date, lang_map, out_path,
                               warnings_path);
        OutputFormat format = OutputFormat::Table;
        if (score->parsed()) {
            if (!parse_output_format(format_name, format))
                throw std::runtime_error("unknown format: " + format_name);
            return cmd_score(score_snapshots, profile, normalize, format, score_out);
        }
        if (rank->parsed()) {
            if (!parse_output_format(rank_format, format))
                throw std::runtime_error("unknown format: " + rank_format);
            return cmd_rank(rank_snapshots, sub_name, bands_path, format, rank_out);
        }
        if (ahp->parsed()) {
            if (!parse_output_format(ahp_format, format))
                throw std::runtime_error("unknown format: " + ahp_format);
            return cmd_ahp(judgment_path, format, ahp_out, fragment_path);
        }
        if (exp->parsed()) {
            write_output(serialize_hierarchy(resolve_profile(export_name)), export_out);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitFatal;
}

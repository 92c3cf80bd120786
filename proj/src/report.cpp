#include "fairhms/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace fairhms {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string join(const std::vector<int>& parts, char sep) {
    std::vector<std::string> s;
    s.reserve(parts.size());
    for (int v : parts) s.push_back(std::to_string(v));
    return join(s, sep);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

ordered_json to_ordered_json(const RunReport& r) {
    ordered_json j;
    j["algorithm"] = r.algorithm;
    j["dataset"] = {{"source", r.source},
                    {"n", r.n},
                    {"d", r.d},
                    {"C", r.c_groups},
                    {"skyline_sizes", r.skyline_sizes}};
    j["spec"] = {{"k", r.k},
                 {"bound_kind", r.bound_kind},
                 {"alpha", round_sig(r.alpha)},
                 {"lower", r.lower},
                 {"upper", r.upper}};
    j["params"] = {{"m", r.m},
                   {"delta", round_sig(r.delta)},
                   {"epsilon", round_sig(r.epsilon)},
                   {"lambda", round_sig(r.lambda)},
                   {"m0", r.m0},
                   {"M", r.big_m},
                   {"seed", r.seed},
                   {"feasible_mode", r.feasible_mode}};
    j["solution"] = {{"ids", r.ids}, {"group_counts", r.group_counts}};
    j["metrics"] = {{"mhr", round_sig(r.mhr)},
                    {"eval_method", r.eval_method},
                    {"err", r.err_count},
                    {"wall_ms", round_sig(r.wall_ms)}};
    j["flags"] = r.flags;
    j["error"] = r.error;
    return j;
}

RunReport from_ordered_json(const ordered_json& j) {
    RunReport r;
    r.algorithm = j.at("algorithm").get<std::string>();
    const auto& ds = j.at("dataset");
    r.source = ds.at("source").get<std::string>();
    r.n = ds.at("n").get<int>();
    r.d = ds.at("d").get<int>();
    r.c_groups = ds.at("C").get<int>();
    r.skyline_sizes = ds.at("skyline_sizes").get<std::vector<int>>();
    const auto& spec = j.at("spec");
    r.k = spec.at("k").get<int>();
    r.bound_kind = spec.at("bound_kind").get<std::string>();
    r.alpha = spec.at("alpha").get<double>();
    r.lower = spec.at("lower").get<std::vector<int>>();
    r.upper = spec.at("upper").get<std::vector<int>>();
    const auto& params = j.at("params");
    r.m = params.at("m").get<int>();
    r.delta = params.at("delta").get<double>();
    r.epsilon = params.at("epsilon").get<double>();
    r.lambda = params.at("lambda").get<double>();
    r.m0 = params.at("m0").get<int>();
    r.big_m = params.at("M").get<int>();
    r.seed = params.at("seed").get<uint64_t>();
    r.feasible_mode = params.at("feasible_mode").get<bool>();
    const auto& sol = j.at("solution");
    r.ids = sol.at("ids").get<std::vector<std::string>>();
    r.group_counts = sol.at("group_counts").get<std::vector<int>>();
    const auto& metrics = j.at("metrics");
    r.mhr = metrics.at("mhr").get<double>();
    r.eval_method = metrics.at("eval_method").get<std::string>();
    r.err_count = metrics.at("err").get<int>();
    r.wall_ms = metrics.at("wall_ms").get<double>();
    r.flags = j.at("flags").get<std::vector<std::string>>();
    r.error = j.value("error", "");
    return r;
}

}  // namespace

double round_sig(double v, int digits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    const double mag = std::pow(10.0, digits - 1 - std::floor(std::log10(std::fabs(v))));
    return std::round(v * mag) / mag;
}

std::string report_to_json(const RunReport& r, int indent) {
    return to_ordered_json(r).dump(indent);
}

RunReport report_from_json(const std::string& text) {
    return from_ordered_json(ordered_json::parse(text));
}

std::vector<RunReport> reports_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    std::vector<RunReport> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(from_ordered_json(item));
    } else {
        out.push_back(from_ordered_json(j));
    }
    return out;
}

std::string csv_header() {
    return "algorithm,source,n,d,C,k,bound_kind,alpha,lower,upper,m,delta,epsilon,lambda,m0,M,"
           "seed,feasible_mode,ids,group_counts,mhr,eval_method,err,wall_ms,flags,error";
}

std::string report_to_csv_row(const RunReport& r) {
    std::ostringstream out;
    out << r.algorithm << ',' << r.source << ',' << r.n << ',' << r.d << ',' << r.c_groups << ','
        << r.k << ',' << r.bound_kind << ',' << fmt_double(round_sig(r.alpha)) << ','
        << join(r.lower, '|') << ',' << join(r.upper, '|') << ',' << r.m << ','
        << fmt_double(round_sig(r.delta)) << ',' << fmt_double(round_sig(r.epsilon)) << ','
        << fmt_double(round_sig(r.lambda)) << ',' << r.m0 << ',' << r.big_m << ',' << r.seed << ','
        << (r.feasible_mode ? 1 : 0) << ',' << join(r.ids, '|') << ','
        << join(r.group_counts, '|') << ',' << fmt_double(round_sig(r.mhr)) << ','
        << r.eval_method << ',' << r.err_count << ',' << fmt_double(round_sig(r.wall_ms)) << ','
        << join(r.flags, '|') << ',' << r.error;
    return out.str();
}

void emit_json(const std::vector<RunReport>& reports, std::ostream& out) {
    if (reports.size() == 1) {
        out << report_to_json(reports.front()) << '\n';
        return;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_ordered_json(r));
    out << arr.dump(2) << '\n';
}

void emit_csv(const std::vector<RunReport>& reports, std::ostream& out) {
    out << csv_header() << '\n';
    for (const auto& r : reports) out << report_to_csv_row(r) << '\n';
}

}  // namespace fairhms

#include "aqrm/error.hpp"
#include "aqrm/scan.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aqrm {

const std::vector<std::string> kCsvColumns = {
    "lambda", "g_over_gs", "omega",   "E0",         "E1",          "gap",        "parity", "sigma_x", "a_norm",
    "AP",     "n_z",       "p_x",     "p_sigma",    "excitation",  "duality_mod", "n_max_used", "status"};

namespace {

const std::vector<std::string>& columns() { return kCsvColumns; }

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw IoError("malformed number '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') {
        throw IoError("malformed integer '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

} // namespace

std::optional<Format> parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    return std::nullopt;
}

std::string to_csv(const ScanDataset& data) {
    std::ostringstream os;
    for (const auto& [k, v] : data.metadata) {
        os << "# " << k << '=' << v << '\n';
    }
    // the only run-dependent line; kept last so hashes can skip it
    os << "# wall_time_s=" << num(data.wall_time_s) << '\n';

    const auto& cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const ScanRecord& r : data.records) {
        os << num(r.lambda) << ',' << num(r.g_over_gs) << ',' << num(r.omega) << ',' << num(r.E0) << ','
           << num(r.E1) << ',' << num(r.gap) << ',' << r.parity << ',' << num(r.sigma_x) << ',' << num(r.a_norm)
           << ',' << num(r.AP) << ',' << r.n_z << ',' << num(r.p_x) << ',' << num(r.p_sigma) << ','
           << num(r.excitation) << ',' << num(r.duality_mod) << ',' << r.n_max_used << ',' << to_string(r.status)
           << '\n';
    }
    return os.str();
}

std::string to_json(const ScanDataset& data) {
    using nlohmann::ordered_json;
    auto value = [](double v) -> ordered_json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };

    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : data.metadata) {
        char* end = nullptr;
        const double d = std::strtod(v.c_str(), &end);
        if (v == "true" || v == "false") meta[k] = v == "true";
        else if (!v.empty() && end == v.c_str() + v.size()) meta[k] = d;
        else meta[k] = v;
    }
    meta["wall_time_s"] = data.wall_time_s;
    meta["lambda_steps"] = data.lambda_steps;
    meta["g_steps"] = data.g_steps;
    meta["columns"] = columns();
    ordered_json per_point = ordered_json::array();
    for (const ScanRecord& r : data.records) per_point.push_back(r.n_max_used);
    meta["n_max_per_point"] = std::move(per_point);

    ordered_json records = ordered_json::array();
    for (const ScanRecord& r : data.records) {
        ordered_json j;
        j["lambda"] = r.lambda;
        j["g_over_gs"] = r.g_over_gs;
        j["omega"] = r.omega;
        j["E0"] = value(r.E0);
        j["E1"] = value(r.E1);
        j["gap"] = value(r.gap);
        j["parity"] = r.parity;
        j["sigma_x"] = value(r.sigma_x);
        j["a_norm"] = value(r.a_norm);
        j["AP"] = value(r.AP);
        j["n_z"] = r.n_z;
        j["p_x"] = value(r.p_x);
        j["p_sigma"] = value(r.p_sigma);
        j["excitation"] = value(r.excitation);
        j["duality_mod"] = value(r.duality_mod);
        j["n_max_used"] = r.n_max_used;
        j["status"] = to_string(r.status);
        records.push_back(std::move(j));
    }

    ordered_json root;
    root["metadata"] = std::move(meta);
    root["records"] = std::move(records);
    return root.dump(2) + "\n";
}

void emit(const ScanDataset& data, const std::string& path, Format format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << (format == Format::Csv ? to_csv(data) : to_json(data));
    if (!out) throw IoError("write failed for " + path);
}

ScanDataset parse_csv(const std::string& text) {
    ScanDataset data;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos || line.size() < 2) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string val = line.substr(eq + 1);
            if (key == "wall_time_s") data.wall_time_s = parse_double(val);
            else data.metadata[key] = val;
            continue;
        }
        const std::vector<std::string> f = split(line, ',');
        if (!header_seen) {
            if (f != columns()) throw IoError("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        if (f.size() != columns().size()) throw IoError("ragged CSV row: " + line);
        ScanRecord r;
        r.lambda = parse_double(f[0]);
        r.g_over_gs = parse_double(f[1]);
        r.omega = parse_double(f[2]);
        r.E0 = parse_double(f[3]);
        r.E1 = parse_double(f[4]);
        r.gap = parse_double(f[5]);
        r.parity = static_cast<int>(parse_long(f[6]));
        r.sigma_x = parse_double(f[7]);
        r.a_norm = parse_double(f[8]);
        r.AP = parse_double(f[9]);
        r.n_z = static_cast<int>(parse_long(f[10]));
        r.p_x = parse_double(f[11]);
        r.p_sigma = parse_double(f[12]);
        r.excitation = parse_double(f[13]);
        r.duality_mod = parse_double(f[14]);
        r.n_max_used = static_cast<std::size_t>(parse_long(f[15]));
        const auto status = parse_status(f[16]);
        if (!status) throw IoError("unknown status '" + f[16] + "'");
        r.status = *status;
        data.records.push_back(r);
    }
    if (!header_seen) throw IoError("CSV has no header row");
    auto steps = [&](const char* key) -> std::size_t {
        const auto it = data.metadata.find(key);
        return it == data.metadata.end() ? 0 : static_cast<std::size_t>(parse_long(it->second));
    };
    data.lambda_steps = steps("lambda_steps");
    data.g_steps = steps("g_steps");
    return data;
}

ScanDataset read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

} // namespace aqrm

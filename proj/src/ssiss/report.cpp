#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ssiss {

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 matching points");
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    FitResult f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (size_t i = 0; i < x.size(); ++i) {
        const double pred = f.slope * x[i] + f.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - ymean) * (y[i] - ymean);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    if (x.size() > 2 && denom > 0.0)
        f.stderr_slope = std::sqrt(ss_res / (n - 2.0) / (sxx - sx * sx / n));
    return f;
}

bool ExperimentReport::all_pass() const {
    for (const auto& [k, v] : verdicts)
        if (!v) return false;
    for (const auto& b : bound_reports)
        if (!b.pass()) return false;
    return true;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["config"] = config_echo;
    j["scalars"] = scalars;
    j["bound_reports"] = nlohmann::ordered_json::array();
    for (const auto& b : bound_reports) {
        nlohmann::ordered_json jb;
        jb["name"] = b.name;
        jb["paper_eq"] = b.paper_eq;
        jb["inputs"] = b.inputs;
        jb["bound"] = b.bound_value;
        if (b.measured_error) {
            jb["measured"] = *b.measured_error;
            jb["margin"] = b.margin();
        }
        jb["verdict"] = b.pass() ? "PASS" : "FAIL";
        j["bound_reports"].push_back(jb);
    }
    j["fits"] = nlohmann::ordered_json::object();
    for (const auto& [name, f] : fits)
        j["fits"][name] = {{"slope", f.slope},
                           {"intercept", f.intercept},
                           {"r2", f.r2},
                           {"stderr_slope", f.stderr_slope}};
    j["tables"] = nlohmann::ordered_json::object();
    for (const auto& t : tables) {
        nlohmann::ordered_json jt;
        jt["columns"] = t.columns;
        jt["rows"] = t.rows;
        j["tables"][t.name] = jt;
    }
    j["verdicts"] = verdicts;
    j["all_pass"] = all_pass();
    j["timestamp"] = timestamp;
    return j;
}

namespace {

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path);
    out << body;
}

std::string csv_of(const Table& t) {
    std::string s;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) s += ',';
        s += t.columns[i];
    }
    s += '\n';
    char buf[64];
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) s += ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            s += buf;
        }
        s += '\n';
    }
    return s;
}

// Minimal static line plot; log10 axes where requested by the caller via
// pre-transformed data.
std::string svg_of(const Table& t, size_t xcol, size_t ycol, const std::string& title) {
    const double W = 640, H = 420, m = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& r : t.rows) {
        xmin = std::min(xmin, r[xcol]);
        xmax = std::max(xmax, r[xcol]);
        ymin = std::min(ymin, r[ycol]);
        ymax = std::max(ymax, r[ycol]);
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double x) { return m + (x - xmin) / (xmax - xmin) * (W - 2 * m); };
    auto py = [&](double y) { return H - m - (y - ymin) / (ymax - ymin) * (H - 2 * m); };

    std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(int(W)) +
                    "' height='" + std::to_string(int(H)) + "'>\n";
    s += "<rect width='100%' height='100%' fill='white'/>\n";
    s += "<text x='20' y='24' font-size='14'>" + title + "</text>\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n", m, H - m,
                  W - m, H - m);
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n", m, m, m,
                  H - m);
    s += buf;
    s += "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
    for (const auto& r : t.rows) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(r[xcol]), py(r[ycol]));
        s += buf;
    }
    s += "'/>\n";
    for (const auto& r : t.rows) {
        std::snprintf(buf, sizeof(buf), "<circle cx='%.2f' cy='%.2f' r='3' fill='steelblue'/>\n",
                      px(r[xcol]), py(r[ycol]));
        s += buf;
    }
    std::snprintf(buf, sizeof(buf), "<text x='%.1f' y='%.1f' font-size='11'>%s</text>\n", W / 2 - 30,
                  H - 20, t.columns[xcol].c_str());
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x='14' y='%.1f' font-size='11' transform='rotate(-90 14 %.1f)'>%s</text>\n",
                  H / 2, H / 2, t.columns[ycol].c_str());
    s += buf;
    s += "</svg>\n";
    return s;
}

}  // namespace

std::vector<std::string> emit_report(const ExperimentReport& report,
                                     const std::set<std::string>& formats,
                                     const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    if (formats.count("json")) {
        const std::string p = out_dir + "/report.json";
        write_file(p, report.to_json().dump(2) + "\n");
        written.push_back(p);
    }
    if (formats.count("csv")) {
        for (const auto& t : report.tables) {
            const std::string p = out_dir + "/" + t.name + ".csv";
            write_file(p, csv_of(t));
            written.push_back(p);
        }
        if (!report.bound_reports.empty()) {
            std::string s = "name,inputs_hash,bound,measured,margin,verdict\n";
            char buf[96];
            for (const auto& b : report.bound_reports) {
                // FNV-1a over the canonical inputs rendering
                unsigned long long h = 1469598103934665603ull;
                auto mix = [&h](const std::string& t) {
                    for (unsigned char ch : t) {
                        h ^= ch;
                        h *= 1099511628211ull;
                    }
                };
                mix(b.name);
                for (const auto& [k, v] : b.inputs) {
                    std::snprintf(buf, sizeof(buf), "%s=%.17g;", k.c_str(), v);
                    mix(buf);
                }
                s += b.name + ',';
                std::snprintf(buf, sizeof(buf), "%016llx", h);
                s += buf;
                std::snprintf(buf, sizeof(buf), ",%.17g", b.bound_value);
                s += buf;
                if (b.measured_error) {
                    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", *b.measured_error, b.margin());
                    s += buf;
                } else {
                    s += ",,";
                }
                s += b.pass() ? ",PASS\n" : ",FAIL\n";
            }
            const std::string p = out_dir + "/bounds_summary.csv";
            write_file(p, s);
            written.push_back(p);
        }
    }
    if (formats.count("svg")) {
        for (const auto& t : report.tables) {
            if (t.columns.size() < 2 || t.rows.size() < 2) continue;
            const std::string p = out_dir + "/" + t.name + ".svg";
            write_file(p, svg_of(t, 0, 1, t.name));
            written.push_back(p);
        }
    }
    return written;
}

}  // namespace ssiss

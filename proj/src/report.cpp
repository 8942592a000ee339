#include "netnorm/report.hpp"

#include "netnorm/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <system_error>

#include "json.hpp"

namespace netnorm {

std::string format_number(scalar_t value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (result.ec != std::errc()) throw error("number formatting failed");
    return std::string(buffer, result.ptr);
}

std::string format_fixed(scalar_t value, int digits) {
    char buffer[64];
    const int written = std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    if (written < 0 || written >= static_cast<int>(sizeof(buffer)))
        throw error("number formatting failed");
    return std::string(buffer, static_cast<std::size_t>(written));
}

report_format format_from_name(const std::string &name) {
    if (name == "text") return report_format::text;
    if (name == "csv") return report_format::csv;
    if (name == "json") return report_format::json;
    throw invalid_params_error("unknown format: " + name);
}

namespace {

nlohmann::ordered_json report_to_json(const test_report &report, bool include_reference) {
    nlohmann::ordered_json j;
    j["statistic"] = statistic_name(report.statistic);
    j["observed"] = report.observed;
    j["p_value"] = report.p_value;
    j["alpha"] = report.alpha;
    j["reject"] = report.reject;
    j["R"] = report.R;
    j["seed"] = report.seed;
    j["assumption2_ok"] = report.assumption2_ok;
    if (include_reference) j["reference"] = report.reference;
    return j;
}

}  // namespace

void write_battery(std::ostream &out, const std::vector<test_report> &reports,
                   report_format format, bool include_reference) {
    switch (format) {
        case report_format::text: {
            out << "statistic            observed      p-value  decision\n";
            for (const auto &report : reports) {
                char line[128];
                std::snprintf(line, sizeof(line), "%-20s %-13s %-8s %s\n",
                              statistic_name(report.statistic).c_str(),
                              format_fixed(report.observed, 6).c_str(),
                              format_fixed(report.p_value, 4).c_str(),
                              report.reject ? "reject" : "retain");
                out << line;
            }
            for (const auto &report : reports) {
                if (!report.assumption2_ok) {
                    out << "warning: alpha*(R+1) < 1, the test cannot reject at this level\n";
                    break;
                }
            }
            break;
        }
        case report_format::csv: {
            out << "statistic,observed,p_value,alpha,reject,R,seed,assumption2_ok\n";
            for (const auto &report : reports) {
                out << statistic_name(report.statistic) << ',' << format_number(report.observed)
                    << ',' << format_number(report.p_value) << ',' << format_number(report.alpha)
                    << ',' << (report.reject ? 1 : 0) << ',' << report.R << ',' << report.seed
                    << ',' << (report.assumption2_ok ? 1 : 0) << '\n';
            }
            break;
        }
        case report_format::json: {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto &report : reports) j.push_back(report_to_json(report, include_reference));
            out << j.dump(2) << '\n';
            break;
        }
    }
}

void write_summary(std::ostream &out, const descriptive_summary &summary, report_format format) {
    switch (format) {
        case report_format::text:
            out << "mean degree          " << format_fixed(summary.mean_degree, 6) << '\n'
                << "sd degree            " << format_fixed(summary.sd_degree, 6) << '\n'
                << "mean eig. centrality " << format_fixed(summary.mean_eigcentrality, 6) << '\n'
                << "sd eig. centrality   " << format_fixed(summary.sd_eigcentrality, 6) << '\n'
                << "clustering           " << format_fixed(summary.clustering, 6) << '\n'
                << "diameter             " << summary.diameter << '\n';
            break;
        case report_format::csv:
            out << "mean_degree,sd_degree,mean_eigcentrality,sd_eigcentrality,clustering,diameter\n"
                << format_number(summary.mean_degree) << ',' << format_number(summary.sd_degree)
                << ',' << format_number(summary.mean_eigcentrality) << ','
                << format_number(summary.sd_eigcentrality) << ','
                << format_number(summary.clustering) << ',' << summary.diameter << '\n';
            break;
        case report_format::json: {
            nlohmann::ordered_json j;
            j["mean_degree"] = summary.mean_degree;
            j["sd_degree"] = summary.sd_degree;
            j["mean_eigcentrality"] = summary.mean_eigcentrality;
            j["sd_eigcentrality"] = summary.sd_eigcentrality;
            j["clustering"] = summary.clustering;
            j["diameter"] = summary.diameter;
            out << j.dump(2) << '\n';
            break;
        }
    }
}

void write_study_rows(std::ostream &out, const study_table &table) {
    out << "trial,statistic,observed,p_value,reject\n";
    for (const auto &row : table.rows) {
        out << row.trial << ',' << statistic_name(row.statistic) << ','
            << format_number(row.observed) << ',' << format_number(row.p_value) << ','
            << (row.reject ? 1 : 0) << '\n';
    }
}

void write_study_summary(std::ostream &out, const study_table &table, report_format format) {
    switch (format) {
        case report_format::text: {
            out << "statistic            mean p   (se)     reject rate (se)\n";
            for (const auto &summary : table.summaries) {
                char line[160];
                std::snprintf(line, sizeof(line), "%-20s %-8s %-8s %-11s %s\n",
                              statistic_name(summary.statistic).c_str(),
                              format_fixed(summary.mean_p, 4).c_str(),
                              format_fixed(summary.se_mean_p, 4).c_str(),
                              format_fixed(summary.rejection_rate, 4).c_str(),
                              format_fixed(summary.se_rejection, 4).c_str());
                out << line;
            }
            break;
        }
        case report_format::csv: {
            out << "statistic,mean_p,se_mean_p,rejection_rate,se_rejection,trials\n";
            for (const auto &summary : table.summaries) {
                out << statistic_name(summary.statistic) << ',' << format_number(summary.mean_p)
                    << ',' << format_number(summary.se_mean_p) << ','
                    << format_number(summary.rejection_rate) << ','
                    << format_number(summary.se_rejection) << ',' << summary.trials << '\n';
            }
            break;
        }
        case report_format::json: {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto &summary : table.summaries) {
                nlohmann::ordered_json row;
                row["statistic"] = statistic_name(summary.statistic);
                row["mean_p"] = summary.mean_p;
                row["se_mean_p"] = summary.se_mean_p;
                row["rejection_rate"] = summary.rejection_rate;
                row["se_rejection"] = summary.se_rejection;
                row["trials"] = summary.trials;
                j.push_back(row);
            }
            out << j.dump(2) << '\n';
            break;
        }
    }
}

void write_diagnostics(std::ostream &out, const population_diagnostics_t &diagnostics,
                       report_format format) {
    const std::string inf1_label = diagnostics.t_inf1_is_sdp ? "s_inf1_pop" : "t_inf1_pop";
    // The signal-to-noise ratios that govern consistency; 0 numerator reports 0.
    const scalar_t t22_ratio =
        diagnostics.t22_pop == 0 ? 0 : diagnostics.t22_pop / diagnostics.tau;
    const scalar_t inf1_ratio =
        diagnostics.t_inf1_pop == 0 ? 0 : diagnostics.t_inf1_pop / diagnostics.sigma;
    switch (format) {
        case report_format::text:
            out << "tau              " << format_fixed(diagnostics.tau, 6) << '\n'
                << "sigma            " << format_fixed(diagnostics.sigma, 6) << '\n'
                << "t22_pop          " << format_fixed(diagnostics.t22_pop, 6) << '\n'
                << inf1_label << "       " << format_fixed(diagnostics.t_inf1_pop, 6) << '\n'
                << "t22_pop/tau      " << format_fixed(t22_ratio, 6) << '\n'
                << inf1_label << "/sigma " << format_fixed(inf1_ratio, 6) << '\n'
                << "grid size        " << diagnostics.grid.size() << '\n';
            break;
        case report_format::csv:
            out << "tau,sigma,t22_pop," << inf1_label << ",t22_ratio,inf1_ratio,grid_size\n"
                << format_number(diagnostics.tau) << ',' << format_number(diagnostics.sigma) << ','
                << format_number(diagnostics.t22_pop) << ','
                << format_number(diagnostics.t_inf1_pop) << ',' << format_number(t22_ratio) << ','
                << format_number(inf1_ratio) << ',' << diagnostics.grid.size() << '\n';
            break;
        case report_format::json: {
            nlohmann::ordered_json j;
            j["tau"] = diagnostics.tau;
            j["sigma"] = diagnostics.sigma;
            j["t22_pop"] = diagnostics.t22_pop;
            j[inf1_label] = diagnostics.t_inf1_pop;
            j["t22_ratio"] = t22_ratio;
            j["inf1_ratio"] = inf1_ratio;
            j["grid"] = diagnostics.grid;
            out << j.dump(2) << '\n';
            break;
        }
    }
}

}  // namespace netnorm

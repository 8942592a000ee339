#include "netnorm/edge_list.hpp"

#include "netnorm/errors.hpp"
#include "netnorm/report.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace netnorm {

namespace {

std::string trim(const std::string &s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

scalar_t parse_number(const std::string &text, long line_no) {
    try {
        std::size_t used = 0;
        const scalar_t value = std::stod(text, &used);
        if (used != text.size()) throw parse_error(line_no, "trailing characters in '" + text + "'");
        return value;
    } catch (const parse_error &) {
        throw;
    } catch (const std::exception &) {
        throw parse_error(line_no, "expected a number, got '" + text + "'");
    }
}

network load_edge_rows(const std::vector<std::pair<long, std::vector<std::string>>> &rows,
                       bool has_weight_column, const load_options &options) {
    // directed weights keyed by (src,dst) labels
    std::map<std::pair<std::string, std::string>, scalar_t> directed;
    std::vector<std::string> labels;
    for (const auto &[line_no, fields] : rows) {
        if (fields.size() < 2 || fields.size() > 3)
            throw parse_error(line_no, "expected 2 or 3 fields, got " + std::to_string(fields.size()));
        if (fields.size() == 3 && !has_weight_column)
            throw parse_error(line_no, "weight given but header has no weight column");
        const std::string &src = fields[0];
        const std::string &dst = fields[1];
        if (src.empty() || dst.empty()) throw parse_error(line_no, "empty node label");
        const scalar_t weight = fields.size() == 3 ? parse_number(fields[2], line_no) : 1.0;
        if (src == dst) {
            if (options.allow_zero_self_loops && weight == 0.0) continue;
            throw self_loop_error(src);
        }
        if (!directed.emplace(std::make_pair(src, dst), weight).second)
            throw duplicate_edge_error(src, dst);
        labels.push_back(src);
        labels.push_back(dst);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::map<std::string, index_t> order;
    for (std::size_t i = 0; i < labels.size(); ++i) order[labels[i]] = static_cast<index_t>(i);

    const index_t n = static_cast<index_t>(labels.size());
    matrix_t w = matrix_t::Zero(n, n);
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = i + 1; j < n; ++j) {
            const auto forward = directed.find({labels[static_cast<std::size_t>(i)],
                                                labels[static_cast<std::size_t>(j)]});
            const auto backward = directed.find({labels[static_cast<std::size_t>(j)],
                                                 labels[static_cast<std::size_t>(i)]});
            const bool has_fwd = forward != directed.end();
            const bool has_bwd = backward != directed.end();
            if (!has_fwd && !has_bwd) continue;
            const scalar_t fwd = has_fwd ? forward->second : 0.0;
            const scalar_t bwd = has_bwd ? backward->second : 0.0;
            scalar_t value = 0;
            switch (options.symmetrize) {
                case symmetrize_rule::or_rule: value = std::max(fwd, bwd); break;
                case symmetrize_rule::and_rule: value = std::min(fwd, bwd); break;
                case symmetrize_rule::strict:
                    if (!has_fwd || !has_bwd || fwd != bwd) throw asymmetric_matrix_error(i, j);
                    value = fwd;
                    break;
            }
            w(i, j) = value;
            w(j, i) = value;
        }
    }
    return make_network(std::move(w), std::move(labels));
}

network load_matrix_rows(const std::vector<std::pair<long, std::vector<std::string>>> &rows) {
    if (rows.empty()) throw parse_error(1, "empty matrix");
    const auto &[header_line, header] = rows.front();
    if (header.size() < 2) throw parse_error(header_line, "matrix header needs labels");
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const index_t n = static_cast<index_t>(labels.size());
    if (static_cast<index_t>(rows.size()) != n + 1)
        throw parse_error(rows.back().first,
                          "expected " + std::to_string(n) + " matrix rows, got " +
                              std::to_string(rows.size() - 1));
    matrix_t w(n, n);
    for (index_t i = 0; i < n; ++i) {
        const auto &[line_no, fields] = rows[static_cast<std::size_t>(i) + 1];
        if (static_cast<index_t>(fields.size()) != n + 1)
            throw parse_error(line_no, "expected " + std::to_string(n + 1) + " fields");
        if (fields[0] != labels[static_cast<std::size_t>(i)])
            throw parse_error(line_no, "row label '" + fields[0] + "' does not match header");
        for (index_t j = 0; j < n; ++j)
            w(i, j) = parse_number(fields[static_cast<std::size_t>(j) + 1], line_no);
    }
    return make_network(std::move(w), std::move(labels));
}

}  // namespace

network load_network(std::istream &in, const load_options &options) {
    std::vector<std::pair<long, std::vector<std::string>>> rows;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        rows.push_back({line_no, split_csv(text)});
    }
    if (rows.empty()) throw parse_error(line_no, "no data rows");
    const auto &header = rows.front().second;
    const bool edge_list = !header.empty() && header[0] == "src" && header.size() >= 2 &&
                           header[1] == "dst" &&
                           (header.size() == 2 || (header.size() == 3 && header[2] == "weight"));
    if (edge_list) {
        const bool has_weight = header.size() == 3;
        rows.erase(rows.begin());
        return load_edge_rows(rows, has_weight, options);
    }
    return load_matrix_rows(rows);
}

network load_network_file(const std::string &path, const load_options &options) {
    std::ifstream in(path);
    if (!in) throw parse_error(0, "cannot open '" + path + "'");
    return load_network(in, options);
}

void save_matrix_csv(const network &net, std::ostream &out) {
    const index_t n = net.n();
    for (index_t j = 0; j < n; ++j) out << ',' << net.labels[static_cast<std::size_t>(j)];
    out << '\n';
    for (index_t i = 0; i < n; ++i) {
        out << net.labels[static_cast<std::size_t>(i)];
        for (index_t j = 0; j < n; ++j) out << ',' << format_number(net.weights(i, j));
        out << '\n';
    }
}

}  // namespace netnorm

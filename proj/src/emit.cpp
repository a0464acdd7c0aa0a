#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "abmink/cli_io.hpp"

namespace abmink::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string unit_display(const ScenarioRequest& req, const std::string& key) {
    for (const auto& spec : schema(req.scenario)) {
        if (spec.key() == key) return std::string(spec.unit_display);
    }
    return "1";
}

std::string input_column(const ScenarioRequest& req, const std::string& key) {
    for (const auto& spec : schema(req.scenario)) {
        if (spec.key() == key) return fmt::format("{} [{}]", spec.symbol, spec.unit_display);
    }
    return key;
}

bool needs_quotes(std::string_view cell) {
    return cell.find_first_of(",\"\n\r") != std::string_view::npos;
}

std::string csv_cell(std::string_view cell) {
    if (!needs_quotes(cell)) return std::string(cell);
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::optional<double> as_number(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

ordered_json request_json(const ScenarioRequest& req) {
    ordered_json j;
    j["scenario"] = std::string(to_string(req.scenario));
    ordered_json params = ordered_json::object();
    for (const auto& spec : schema(req.scenario)) {
        const auto it = req.params.find(spec.key());
        if (it == req.params.end()) continue;
        params[spec.key()] = {{"value", it->second}, {"unit", std::string(spec.unit_display)}};
    }
    j["params"] = params;
    j["tag"] = req.tag ? ordered_json(std::string(to_string(*req.tag))) : ordered_json(nullptr);
    if (req.sweep) {
        j["sweep"] = {{"parameter", req.sweep->parameter},
                      {"min", req.sweep->min},
                      {"max", req.sweep->max},
                      {"count", req.sweep->count}};
    } else {
        j["sweep"] = nullptr;
    }
    return j;
}

std::string emit_json(const ScenarioReport& report) {
    ordered_json j;
    j["request"] = request_json(report.request);
    j["provenance"] = report.provenance;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r;
        ordered_json inputs = ordered_json::object();
        for (const auto& [key, value] : row.inputs) {
            inputs[key] = {{"value", value}, {"unit", unit_display(report.request, key)}};
        }
        r["inputs"] = inputs;
        ordered_json outputs = ordered_json::array();
        for (const auto& q : row.outputs) {
            outputs.push_back({{"name", q.name},
                               {"unit", q.unit},
                               {"tag", q.tag ? ordered_json(std::string(to_string(*q.tag))) : ordered_json(nullptr)},
                               {"value", q.value}});
        }
        r["outputs"] = outputs;
        ordered_json residuals = ordered_json::array();
        for (const auto& res : row.residuals) {
            residuals.push_back(
                {{"name", res.name}, {"value", res.value}, {"tolerance", res.tolerance}, {"pass", res.pass()}});
        }
        r["residuals"] = residuals;
        ordered_json labels = ordered_json::object();
        for (const auto& [k, v] : row.labels) labels[k] = v;
        r["labels"] = labels;
        r["error"] = row.error ? ordered_json(*row.error) : ordered_json(nullptr);
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    j["ok"] = report.ok();
    return j.dump(2) + "\n";
}

std::string emit_table(const ScenarioReport& report) {
    // Transposed: one line per column, one value column per sweep point.
    const Table t = tabulate(report);
    std::vector<std::vector<std::string>> cells;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        std::vector<std::string> line{t.header[c]};
        for (const auto& row : t.rows) {
            const auto v = as_number(row[c]);
            line.push_back(v ? fmt::format("{:.6e}", *v) : row[c]);
        }
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(t.rows.size() + 1, 0);
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }

    std::string out = fmt::format("# scenario: {}\n# method: {}\n", to_string(report.request.scenario),
                                  report.provenance);
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            const bool last = i + 1 == line.size();
            if (i == 0) {
                out += fmt::format("{:<{}}", line[i], width[i]);
            } else {
                out += fmt::format("  {:>{}}", line[i], width[i]);
            }
            if (last) out += '\n';
        }
    }
    out += fmt::format("# status: {}\n", report.ok() ? "ok" : "FAILED");
    return out;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
    if (name == "table") return Format::table;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    return std::nullopt;
}

std::string format_number(double v) { return fmt::format("{:.16e}", v); }

std::string Quantity::column() const {
    return tag ? fmt::format("{}.{} [{}]", name, to_string(*tag), unit) : fmt::format("{} [{}]", name, unit);
}

Table tabulate(const ScenarioReport& report) {
    Table t;
    // Columns come from the first row that has outputs.
    const ReportRow* shape = nullptr;
    for (const auto& row : report.rows) {
        if (!row.error) {
            shape = &row;
            break;
        }
    }
    if (!report.rows.empty()) {
        for (const auto& [key, value] : report.rows.front().inputs) {
            t.header.push_back(input_column(report.request, key));
        }
    }
    if (shape) {
        for (const auto& q : shape->outputs) t.header.push_back(q.column());
        for (const auto& r : shape->residuals) t.header.push_back(fmt::format("residual.{} [1]", r.name));
        for (const auto& [k, v] : shape->labels) t.header.push_back(k);
    }
    const bool any_error = std::any_of(report.rows.begin(), report.rows.end(), [](const auto& r) { return r.error; });
    if (any_error) t.header.push_back("error");

    for (const auto& row : report.rows) {
        std::vector<std::string> cells;
        for (const auto& [key, value] : row.inputs) cells.push_back(format_number(value));
        if (shape) {
            if (row.error) {
                const std::size_t blanks = shape->outputs.size() + shape->residuals.size() + shape->labels.size();
                cells.insert(cells.end(), blanks, "");
            } else {
                for (const auto& q : row.outputs) cells.push_back(format_number(q.value));
                for (const auto& r : row.residuals) cells.push_back(format_number(r.value));
                for (const auto& [k, v] : row.labels) cells.push_back(v);
            }
        }
        if (any_error) cells.push_back(row.error.value_or(""));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::string to_csv(const Table& table) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(cells[i]);
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
    return out;
}

Table parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        any = true;
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            record.push_back(std::move(cell));
            cell.clear();
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(std::move(cell));
            cell.clear();
            records.push_back(std::move(record));
            record.clear();
            any = false;
        } else {
            cell += ch;
        }
    }
    if (any) {
        record.push_back(std::move(cell));
        records.push_back(std::move(record));
    }
    Table t;
    if (records.empty()) return t;
    t.header = std::move(records.front());
    t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return t;
}

std::string table_to_json(const Table& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r = ordered_json::array();
        for (const auto& cell : row) {
            const auto v = as_number(cell);
            if (v && std::isfinite(*v)) {
                r.push_back(*v);
            } else {
                r.push_back(cell);
            }
        }
        rows.push_back(std::move(r));
    }
    ordered_json j;
    j["header"] = table.header;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

Table table_from_json(std::string_view text) {
    const auto j = nlohmann::json::parse(text);
    Table t;
    t.header = j.at("header").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
        std::vector<std::string> cells;
        for (const auto& cell : row) {
            cells.push_back(cell.is_number() ? format_number(cell.get<double>()) : cell.get<std::string>());
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::string emit(const ScenarioReport& report, Format format) {
    switch (format) {
        case Format::csv: return to_csv(tabulate(report));
        case Format::json: return emit_json(report);
        case Format::table: return emit_table(report);
    }
    return {};
}

}  // namespace abmink::cli

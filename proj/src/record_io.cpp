#include "hyperbib/record_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace hyperbib {

namespace {

using nlohmann::json;

struct LineOutcome {
    std::optional<PublicationRecord> record;
    std::vector<RecordError> errors;
};

LineOutcome fail(std::size_t line, ErrorReason reason, std::string detail) {
    LineOutcome out;
    out.errors.push_back(RecordError{line, reason, std::move(detail), Severity::Error});
    return out;
}

// Record-level validation on a structurally complete record.
LineOutcome finish(PublicationRecord record, std::size_t line) {
    LineOutcome out;
    out.errors = validate_record(record, line);
    if (has_fatal(out.errors)) {
        // Exactly one error per malformed line: keep the first fatal one.
        auto first = std::find_if(out.errors.begin(), out.errors.end(),
                                  [](const RecordError& e) { return e.severity == Severity::Error; });
        RecordError e = *first;
        out.errors = {e};
        return out;
    }
    out.record = std::move(record);
    return out;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return value;
}

LineOutcome parse_json_line(std::string_view line, std::size_t line_no) {
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) return fail(line_no, ErrorReason::BadType, "line is not valid JSON");
    if (!obj.is_object()) return fail(line_no, ErrorReason::BadType, "line is not a JSON object");

    for (const char* key : {"id", "year", "authors", "citations"})
        if (!obj.contains(key)) return fail(line_no, ErrorReason::MissingField, std::string("missing '") + key + "'");

    PublicationRecord r;
    const auto& id = obj["id"];
    if (!id.is_string()) return fail(line_no, ErrorReason::BadType, "'id' must be a string");
    r.id = id.get<std::string>();

    auto integer = [&](const char* key, std::int64_t& dst) -> bool {
        const auto& v = obj[key];
        if (!v.is_number_integer()) return false;
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) return false;
        dst = v.get<std::int64_t>();
        return true;
    };
    std::int64_t year = 0;
    if (!integer("year", year)) return fail(line_no, ErrorReason::BadType, "'year' must be an integer");
    if (year < kMinYear || year > kMaxYear)
        return fail(line_no, ErrorReason::RangeViolation, "year " + std::to_string(year) + " outside 1800-2100");
    r.year = static_cast<int>(year);
    if (!integer("authors", r.author_count)) return fail(line_no, ErrorReason::BadType, "'authors' must be an integer");
    if (!integer("citations", r.citation_total))
        return fail(line_no, ErrorReason::BadType, "'citations' must be an integer");

    if (auto it = obj.find("citations_by_year"); it != obj.end()) {
        if (!it->is_object()) return fail(line_no, ErrorReason::BadType, "'citations_by_year' must be an object");
        std::map<int, std::int64_t> by_year;
        for (const auto& [key, value] : it->items()) {
            auto y = parse_int(key);
            if (!y || *y < INT32_MIN || *y > INT32_MAX)
                return fail(line_no, ErrorReason::BadType, "citations_by_year key '" + key + "' is not a year");
            if (!value.is_number_integer())
                return fail(line_no, ErrorReason::BadType, "citations_by_year values must be integers");
            by_year[static_cast<int>(*y)] = value.get<std::int64_t>();
        }
        r.citations_by_year = std::move(by_year);
    }
    if (auto it = obj.find("title"); it != obj.end()) {
        if (!it->is_string()) return fail(line_no, ErrorReason::BadType, "'title' must be a string");
        r.title = it->get<std::string>();
    }
    if (auto it = obj.find("affiliations"); it != obj.end()) {
        if (!it->is_array()) return fail(line_no, ErrorReason::BadType, "'affiliations' must be an array");
        std::vector<std::string> affs;
        for (const auto& a : *it) {
            if (!a.is_string()) return fail(line_no, ErrorReason::BadType, "'affiliations' must hold strings");
            affs.push_back(a.get<std::string>());
        }
        r.affiliations = std::move(affs);
    }
    if (auto it = obj.find("collab"); it != obj.end()) {
        if (!it->is_string()) return fail(line_no, ErrorReason::BadType, "'collab' must be a string");
        r.collab_label = it->get<std::string>();
    }
    return finish(std::move(r), line_no);
}

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

ParseResult parse_jsonl(std::string_view text, unsigned threads) {
    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos < text.size();) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }

    std::vector<LineOutcome> outcomes(lines.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            if (!blank(lines[i]) && lines[i].front() != '#') outcomes[i] = parse_json_line(lines[i], i + 1);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(lines.size() / 1024 + 1)));
    if (threads == 1) {
        work(0, lines.size());
    } else {
        std::vector<std::jthread> pool;
        std::size_t chunk = (lines.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(lines.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
    }

    ParseResult result;
    for (auto& o : outcomes) {
        if (o.record) result.records.push_back(std::move(*o.record));
        result.errors.insert(result.errors.end(), o.errors.begin(), o.errors.end());
    }
    return result;
}

// RFC-4180 record splitter. Yields each record's fields and its starting line.
struct CsvRow {
    std::vector<std::string> fields;
    std::size_t line = 0;
    bool unterminated = false;
};

std::vector<CsvRow> split_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        CsvRow row;
        row.line = line;
        std::string field;
        bool done = false;
        while (!done) {
            if (i < text.size() && text[i] == '"') {
                ++i;
                bool closed = false;
                while (i < text.size()) {
                    char c = text[i++];
                    if (c == '"') {
                        if (i < text.size() && text[i] == '"') {
                            field.push_back('"');
                            ++i;
                        } else {
                            closed = true;
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field.push_back(c);
                    }
                }
                if (!closed) row.unterminated = true;
                // Characters after a closing quote up to the delimiter are kept verbatim.
                while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') field.push_back(text[i++]);
            } else {
                while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') field.push_back(text[i++]);
            }
            row.fields.push_back(std::move(field));
            field.clear();
            if (i >= text.size()) {
                done = true;
            } else if (text[i] == ',') {
                ++i;
            } else {
                if (text[i] == '\r') ++i;
                if (i < text.size() && text[i] == '\n') ++i;
                ++line;
                done = true;
            }
        }
        bool empty_line = row.fields.size() == 1 && row.fields[0].empty() && !row.unterminated;
        if (!empty_line) rows.push_back(std::move(row));
    }
    return rows;
}

ParseResult parse_csv(std::string_view text) {
    ParseResult result;
    auto rows = split_csv(text);
    if (rows.empty()) return result;

    const auto& header = rows.front().fields;
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    };
    auto c_id = column("id"), c_year = column("year"), c_authors = column("authors"), c_cites = column("citations");
    auto c_collab = column("collab"), c_title = column("title");
    if (!c_id || !c_year || !c_authors || !c_cites)
        throw InputError("csv header must contain id,year,authors,citations (expected id,year,authors,citations,collab,title)");

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto push = [&](LineOutcome o) {
            if (o.record) result.records.push_back(std::move(*o.record));
            result.errors.insert(result.errors.end(), o.errors.begin(), o.errors.end());
        };
        if (row.unterminated) {
            push(fail(row.line, ErrorReason::BadType, "unterminated quoted field"));
            continue;
        }
        if (row.fields.size() != header.size()) {
            push(fail(row.line, ErrorReason::BadType,
                      "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(row.fields.size())));
            continue;
        }
        const auto& f = row.fields;
        PublicationRecord rec;
        bool bad = false;
        for (auto [col, name] : {std::pair{c_id, "id"}, {c_year, "year"}, {c_authors, "authors"}, {c_cites, "citations"}}) {
            if (f[*col].empty()) {
                push(fail(row.line, ErrorReason::MissingField, std::string("missing '") + name + "'"));
                bad = true;
                break;
            }
        }
        if (bad) continue;
        rec.id = f[*c_id];
        auto year = parse_int(f[*c_year]);
        auto authors = parse_int(f[*c_authors]);
        auto cites = parse_int(f[*c_cites]);
        if (!year) { push(fail(row.line, ErrorReason::BadType, "'year' must be an integer")); continue; }
        if (!authors) { push(fail(row.line, ErrorReason::BadType, "'authors' must be an integer")); continue; }
        if (!cites) { push(fail(row.line, ErrorReason::BadType, "'citations' must be an integer")); continue; }
        if (*year < kMinYear || *year > kMaxYear) {
            push(fail(row.line, ErrorReason::RangeViolation, "year " + std::to_string(*year) + " outside 1800-2100"));
            continue;
        }
        rec.year = static_cast<int>(*year);
        rec.author_count = *authors;
        rec.citation_total = *cites;
        if (c_collab && !f[*c_collab].empty()) rec.collab_label = f[*c_collab];
        if (c_title && !f[*c_title].empty()) rec.title = f[*c_title];
        push(finish(std::move(rec), row.line));
    }
    return result;
}

}  // namespace

RecordFormat parse_format(std::string_view name) {
    if (name == "jsonl") return RecordFormat::Jsonl;
    if (name == "csv") return RecordFormat::Csv;
    throw std::invalid_argument("unknown record format '" + std::string(name) + "' (expected jsonl or csv)");
}

ParseResult parse_records(std::string_view text, RecordFormat format, unsigned threads) {
    return format == RecordFormat::Jsonl ? parse_jsonl(text, threads) : parse_csv(text);
}

ParseResult parse_records(std::istream& in, RecordFormat format, unsigned threads) {
    if (!in) throw InputError("input stream is not readable");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw InputError("read error on input stream");
    return parse_records(std::string_view(text), format, threads);
}

ParseResult parse_file(const std::filesystem::path& path, RecordFormat format, unsigned threads) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path.string() + "'");
    return parse_records(in, format, threads);
}

std::string to_jsonl_line(const PublicationRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["year"] = r.year;
    j["authors"] = r.author_count;
    j["citations"] = r.citation_total;
    if (r.citations_by_year) {
        nlohmann::ordered_json by_year = nlohmann::ordered_json::object();
        for (const auto& [year, count] : *r.citations_by_year) by_year[std::to_string(year)] = count;
        j["citations_by_year"] = std::move(by_year);
    }
    if (r.title) j["title"] = *r.title;
    if (r.affiliations) j["affiliations"] = *r.affiliations;
    if (r.collab_label) j["collab"] = *r.collab_label;
    return j.dump();
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
    for (const auto& r : corpus) out << to_jsonl_line(r) << '\n';
}

}  // namespace hyperbib

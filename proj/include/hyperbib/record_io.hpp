#ifndef HYPERBIB_RECORD_IO_HPP
#define HYPERBIB_RECORD_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hyperbib/corpus.hpp"
#include "hyperbib/record.hpp"

namespace hyperbib {

enum class RecordFormat { Jsonl, Csv };

/// "jsonl" or "csv"; throws std::invalid_argument otherwise.
RecordFormat parse_format(std::string_view name);

/// Fatal input problem: the stream cannot be read, or it is not in the
/// declared format at all (e.g. a csv header without the required columns).
/// Distinct from per-line RecordErrors, which never abort parsing.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParseResult {
    std::vector<PublicationRecord> records;
    std::vector<RecordError> errors;
};

/// Parses a complete record file. Every well-formed line yields one record,
/// every malformed line one error carrying its 1-based line number. Warnings
/// (e.g. citation events dated before publication) accompany the record.
/// Blank lines, and jsonl lines starting with '#', are skipped.
/// jsonl input is parsed over `threads` workers; the result does not depend
/// on the thread count.
ParseResult parse_records(std::istream& in, RecordFormat format, unsigned threads = 1);
ParseResult parse_records(std::string_view text, RecordFormat format, unsigned threads = 1);
ParseResult parse_file(const std::filesystem::path& path, RecordFormat format, unsigned threads = 1);

/// One jsonl line (no trailing newline) with keys in canonical order.
std::string to_jsonl_line(const PublicationRecord& record);
void write_jsonl(std::ostream& out, const Corpus& corpus);

}  // namespace hyperbib

#endif  // HYPERBIB_RECORD_IO_HPP

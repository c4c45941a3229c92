#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hyperbib/corpus.hpp"
#include "hyperbib/record_io.hpp"
#include "oracles.hpp"

using namespace hyperbib;
using oracle::record;

TEST(ParseJsonl, WellFormedLine) {
    auto res = parse_records(std::string_view(R"({"id":"p1","year":2012,"authors":2891,"citations":5359})"),
                             RecordFormat::Jsonl);
    ASSERT_TRUE(res.errors.empty());
    ASSERT_EQ(res.records.size(), 1u);
    EXPECT_EQ(res.records[0], record("p1", 2012, 2891, 5359));
}

TEST(ParseJsonl, OptionalFields) {
    auto res = parse_records(
        std::string_view(
            R"({"id":"x","year":2001,"authors":3,"citations":3,"citations_by_year":{"2001":1,"2002":2},"title":"T","affiliations":["A","B"],"collab":"CMS"})"),
        RecordFormat::Jsonl);
    ASSERT_TRUE(res.errors.empty());
    const auto& r = res.records.at(0);
    EXPECT_EQ(r.citations_by_year, (std::map<int, std::int64_t>{{2001, 1}, {2002, 2}}));
    EXPECT_EQ(r.title, "T");
    EXPECT_EQ(r.affiliations, (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(r.collab_label, "CMS");
}

TEST(ParseJsonl, MissingYear) {
    auto res = parse_records(std::string_view(R"({"id":"p1","authors":2,"citations":0})"), RecordFormat::Jsonl);
    EXPECT_TRUE(res.records.empty());
    ASSERT_EQ(res.errors.size(), 1u);
    EXPECT_EQ(res.errors[0].reason, ErrorReason::MissingField);
    EXPECT_EQ(res.errors[0].line_number, 1u);
}

TEST(ParseJsonl, CitationSumMismatch) {
    auto res = parse_records(
        std::string_view(R"({"id":"p","year":2000,"authors":1,"citations":4,"citations_by_year":{"2001":1,"2002":2}})"),
        RecordFormat::Jsonl);
    EXPECT_TRUE(res.records.empty());
    ASSERT_EQ(res.errors.size(), 1u);
    EXPECT_EQ(res.errors[0].reason, ErrorReason::CitationSumMismatch);
}

TEST(ParseJsonl, EarlyCitationIsWarningOnly) {
    auto res = parse_records(
        std::string_view(R"({"id":"p","year":2005,"authors":1,"citations":1,"citations_by_year":{"2004":1}})"),
        RecordFormat::Jsonl);
    ASSERT_EQ(res.records.size(), 1u);
    ASSERT_EQ(res.errors.size(), 1u);
    EXPECT_EQ(res.errors[0].reason, ErrorReason::RangeViolation);
    EXPECT_EQ(res.errors[0].severity, Severity::Warning);
}

TEST(ParseJsonl, BadLinesDoNotAbort) {
    std::string text =
        "{\"id\":\"a\",\"year\":2000,\"authors\":1,\"citations\":0}\n"
        "not json\n"
        "{\"id\":\"b\",\"year\":\"2000\",\"authors\":1,\"citations\":0}\n"
        "\n"
        "# comment\n"
        "{\"id\":\"c\",\"year\":2000,\"authors\":0,\"citations\":0}\n"
        "{\"id\":\"d\",\"year\":1700,\"authors\":1,\"citations\":0}\n"
        "{\"id\":\"e\",\"year\":2000,\"authors\":2.5,\"citations\":0}\n"
        "{\"id\":\"f\",\"year\":2000,\"authors\":2,\"citations\":-1}\n"
        "{\"id\":\"g\",\"year\":2000,\"authors\":2,\"citations\":1}";
    auto res = parse_records(std::string_view(text), RecordFormat::Jsonl);
    ASSERT_EQ(res.records.size(), 2u);
    EXPECT_EQ(res.records[0].id, "a");
    EXPECT_EQ(res.records[1].id, "g");
    ASSERT_EQ(res.errors.size(), 6u);
    std::vector<std::size_t> lines;
    for (const auto& e : res.errors) lines.push_back(e.line_number);
    EXPECT_EQ(lines, (std::vector<std::size_t>{2, 3, 6, 7, 8, 9}));
    EXPECT_EQ(res.errors[0].reason, ErrorReason::BadType);
    EXPECT_EQ(res.errors[1].reason, ErrorReason::BadType);
    EXPECT_EQ(res.errors[2].reason, ErrorReason::RangeViolation);  // zero authors rejected, not coerced
    EXPECT_EQ(res.errors[3].reason, ErrorReason::RangeViolation);
    EXPECT_EQ(res.errors[4].reason, ErrorReason::BadType);
    EXPECT_EQ(res.errors[5].reason, ErrorReason::RangeViolation);
}

TEST(ParseJsonl, ThreadCountDoesNotChangeResult) {
    std::ostringstream text;
    std::mt19937_64 gen(7);
    for (int i = 0; i < 5000; ++i) {
        if (i % 97 == 0) {
            text << "garbage " << i << '\n';
            continue;
        }
        text << R"({"id":"r)" << i << R"(","year":)" << 1990 + gen() % 30 << R"(,"authors":)" << 1 + gen() % 3000
             << R"(,"citations":)" << gen() % 100 << "}\n";
    }
    auto seq = parse_records(std::string_view(text.str()), RecordFormat::Jsonl, 1);
    auto par = parse_records(std::string_view(text.str()), RecordFormat::Jsonl, 4);
    EXPECT_EQ(seq.records, par.records);
    EXPECT_EQ(seq.errors, par.errors);
    EXPECT_EQ(seq.errors.size(), 52u);
}

TEST(ParseCsv, QuotedFieldsAndLineNumbers) {
    std::string text =
        "id,year,authors,citations,collab,title\r\n"
        "p1,2012,2891,5359,CMS,\"Observation of a new boson, at 125 GeV\"\r\n"
        "p2,2013,3,0,,\"multi\nline \"\"quoted\"\" title\"\n"
        "p3,2013,x,0,,t\n"
        "p4,2013,2\n"
        ",2013,2,0,,\n";
    auto res = parse_records(std::string_view(text), RecordFormat::Csv);
    ASSERT_EQ(res.records.size(), 2u);
    EXPECT_EQ(res.records[0].title, "Observation of a new boson, at 125 GeV");
    EXPECT_EQ(res.records[0].collab_label, "CMS");
    EXPECT_EQ(res.records[1].title, "multi\nline \"quoted\" title");
    EXPECT_FALSE(res.records[1].collab_label.has_value());
    ASSERT_EQ(res.errors.size(), 3u);
    EXPECT_EQ(res.errors[0].line_number, 5u);
    EXPECT_EQ(res.errors[0].reason, ErrorReason::BadType);
    EXPECT_EQ(res.errors[1].line_number, 6u);
    EXPECT_EQ(res.errors[2].line_number, 7u);
    EXPECT_EQ(res.errors[2].reason, ErrorReason::MissingField);
}

TEST(ParseCsv, HeaderWithoutRequiredColumnsIsFatal) {
    EXPECT_THROW(parse_records(std::string_view("id,year,authors\np1,2000,1\n"), RecordFormat::Csv), InputError);
}

TEST(ParseCsv, UnterminatedQuote) {
    auto res = parse_records(std::string_view("id,year,authors,citations,collab,title\np,2000,1,0,,\"open\n"),
                             RecordFormat::Csv);
    EXPECT_TRUE(res.records.empty());
    ASSERT_EQ(res.errors.size(), 1u);
    EXPECT_EQ(res.errors[0].line_number, 2u);
}

TEST(ParseFile, UnreadableIsFatal) {
    EXPECT_THROW(parse_file("/nonexistent/records.jsonl", RecordFormat::Jsonl), InputError);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(BuildCorpus, DistinctIds) {
    auto res = build_corpus({record("p1", 2000, 1, 0), record("p2", 2000, 1, 0)}, DedupPolicy::KeepFirst);
    EXPECT_EQ(res.corpus.size(), 2u);
    EXPECT_TRUE(res.errors.empty());
}

TEST(BuildCorpus, KeepFirst) {
    auto res = build_corpus({record("p1", 2000, 1, 0), record("p1", 2001, 5, 9)}, DedupPolicy::KeepFirst);
    ASSERT_EQ(res.corpus.size(), 1u);
    EXPECT_EQ(res.corpus.records()[0].year, 2000);
    ASSERT_EQ(res.errors.size(), 1u);
    EXPECT_EQ(res.errors[0].reason, ErrorReason::DuplicateId);
    EXPECT_EQ(res.errors[0].line_number, 2u);
}

TEST(BuildCorpus, RejectDropsAllCopies) {
    auto res = build_corpus({record("p1", 2000, 1, 0), record("p1", 2001, 5, 9)}, DedupPolicy::Reject);
    EXPECT_TRUE(res.corpus.empty());
    EXPECT_EQ(res.errors.size(), 2u);
}

TEST(BuildCorpus, InvalidRecordsRejectedNotRepaired) {
    auto res = build_corpus({record("a", 2000, 0, 0), record("b", 2000, 1, -3), record("", 2000, 1, 0)},
                            DedupPolicy::KeepFirst);
    EXPECT_TRUE(res.corpus.empty());
    EXPECT_EQ(res.errors.size(), 3u);
}

TEST(BuildCorpus, IdempotentAndOrderIndependent) {
    std::vector<PublicationRecord> recs;
    for (int i = 0; i < 50; ++i) recs.push_back(record("r" + std::to_string(i), 1990 + i % 20, 1 + i, i % 7));
    auto first = build_corpus(recs, DedupPolicy::KeepFirst);
    std::vector<PublicationRecord> again(first.corpus.begin(), first.corpus.end());
    auto second = build_corpus(again, DedupPolicy::KeepFirst);
    EXPECT_EQ(first.corpus, second.corpus);
    EXPECT_TRUE(second.errors.empty());

    std::shuffle(recs.begin(), recs.end(), std::mt19937(3));
    EXPECT_EQ(build_corpus(recs, DedupPolicy::KeepFirst).corpus, first.corpus);
}

TEST(CorpusType, RejectsDuplicateIdsAndFinds) {
    EXPECT_THROW(Corpus({record("a", 2000, 1, 0), record("a", 2000, 1, 0)}), std::invalid_argument);
    Corpus c({record("b", 2000, 1, 0), record("a", 2001, 2, 0)});
    ASSERT_NE(c.find("a"), nullptr);
    EXPECT_EQ(c.find("a")->year, 2001);
    EXPECT_EQ(c.find("zz"), nullptr);
}

class FilterPeriod : public ::testing::Test {
protected:
    Corpus corpus{{record("a", 1889, 1, 0), record("b", 1990, 1, 0), record("c", 1991, 1, 0), record("d", 2020, 1, 0)}};
};

TEST_F(FilterPeriod, FirstPeriodInclusive) {
    auto s = filter_period(corpus, 1889, 1990);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.records()[0].year, 1889);
    EXPECT_EQ(s.records()[1].year, 1990);
}

TEST_F(FilterPeriod, FullSpanIsIdentity) { EXPECT_EQ(filter_period(corpus, 1889, 2020), corpus); }

TEST_F(FilterPeriod, DisjointIsEmpty) { EXPECT_TRUE(filter_period(corpus, 2050, 2060).empty()); }

TEST_F(FilterPeriod, ReversedBoundsThrow) { EXPECT_THROW(filter_period(corpus, 2000, 1999), std::invalid_argument); }

TEST(FilterPeriodProperty, NestedSlicesCompose) {
    std::mt19937 gen(11);
    std::vector<PublicationRecord> recs;
    for (int i = 0; i < 300; ++i)
        recs.push_back(record("r" + std::to_string(i), 1950 + static_cast<int>(gen() % 70), 1, 0));
    Corpus c(recs);
    for (int trial = 0; trial < 200; ++trial) {
        int a = 1950 + gen() % 70, b = 1950 + gen() % 70, x = 1950 + gen() % 70, y = 1950 + gen() % 70;
        if (a > b) std::swap(a, b);
        if (x > y) std::swap(x, y);
        if (std::max(a, x) > std::min(b, y)) continue;
        EXPECT_EQ(filter_period(filter_period(c, a, b), x, y), filter_period(c, std::max(a, x), std::min(b, y)));
    }
}

TEST(JsonlRoundTrip, SerializeThenReparseIsEqual) {
    std::mt19937 gen(5);
    std::vector<PublicationRecord> recs;
    for (int i = 0; i < 200; ++i) {
        auto r = record("id-" + std::to_string(i), 1900 + static_cast<int>(gen() % 120), 1 + gen() % 4000, 0);
        if (i % 3 == 0) {
            std::map<int, std::int64_t> by_year;
            for (int k = 0; k < 4; ++k) {
                std::int64_t v = gen() % 20;
                by_year[r.year + k] += v;
                r.citation_total += v;
            }
            r.citations_by_year = by_year;
        } else {
            r.citation_total = gen() % 500;
        }
        if (i % 5 == 0) r.title = "T\"itle, with \\ escapes \xD0\x9F";
        if (i % 7 == 0) r.affiliations = std::vector<std::string>{"Kharkiv", "Kyiv"};
        if (i % 11 == 0) r.collab_label = "LHCb";
        recs.push_back(r);
    }
    auto built = build_corpus(recs, DedupPolicy::KeepFirst);
    ASSERT_TRUE(built.errors.empty());
    std::ostringstream out;
    write_jsonl(out, built.corpus);
    auto parsed = parse_records(std::string_view(out.str()), RecordFormat::Jsonl);
    ASSERT_TRUE(parsed.errors.empty());
    EXPECT_EQ(build_corpus(parsed.records, DedupPolicy::KeepFirst).corpus, built.corpus);
}

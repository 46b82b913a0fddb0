/// \file corpus.hpp
/// \brief The identity regression corpus: closed-form results bound to an
/// operation, its arguments, an expected value and a tolerance.
///
/// File format, one case per line, fields separated by '|':
///
///     id | op | key=value; key=value | expected | tol | source | cite
///
/// `expected` is a complex literal or constant expression (pi, e, egamma, i,
/// log, sqrt, ...). `source` is closed_form, derived or trivial; closed_form
/// cases need a nonempty cite naming the identity. '#' starts a comment line.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "summa/kernel.hpp"

namespace summa {

enum class CaseSource { closed_form, derived, trivial };
CaseSource parse_case_source(const std::string& s);
const char* to_string(CaseSource s);

struct IdentityCase {
    std::string id;
    std::string op;
    std::map<std::string, std::string> args;
    std::string expected_text;
    Scalar expected = 0;
    double tolerance = 0;
    CaseSource source = CaseSource::derived;
    std::string cite;
    int line = 0;
};

struct ReferenceConstant {
    std::string name;
    double value;         // literal decimal
    double recomputed;    // from an independent series
    std::string series;   // what was summed
};

/// lambda, zeta(2), zeta(3), log 2, pi, e, log 2pi, sqrt(3)/pi.
const std::vector<ReferenceConstant>& reference_constants();
double reference_constant(const std::string& name);

/// Parses corpus text; throws a parse error listing every offending line and id.
std::vector<IdentityCase> parse_corpus(const std::string& text);
std::vector<IdentityCase> load_corpus(const std::string& path);
std::string default_corpus_path();

/// Operation names understood by run_case.
const std::vector<std::string>& corpus_operations();

struct CaseResult {
    std::string id;
    std::string op;
    Scalar value = 0;
    Scalar expected = 0;
    double error = 0;
    double tolerance = 0;
    bool passed = false;
    std::string message;  // exception text when the operation failed
};

struct CorpusReport {
    std::vector<CaseResult> results;  // ordered by id
    int failures() const;
    bool ok() const { return failures() == 0; }
    std::string table() const;
    std::string json() const;
};

CaseResult run_case(const IdentityCase& c);

/// Cases whose id matches the glob (all when empty), run on `threads` workers.
CorpusReport run_corpus(const std::vector<IdentityCase>& cases, const std::string& filter = "", int threads = 0);
CorpusReport run_corpus(const std::string& filter = "", int threads = 0);

}  // namespace summa

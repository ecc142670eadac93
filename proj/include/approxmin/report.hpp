#pragma once

#include "approxmin/corpus.hpp"
#include "approxmin/evp.hpp"
#include "approxmin/minima.hpp"
#include "approxmin/nonsmooth.hpp"
#include "approxmin/optcond.hpp"
#include "approxmin/sampling.hpp"
#include "approxmin/verdict.hpp"

#include "json.hpp"

#include <string>

namespace approxmin {

/// Reports keep insertion order so that identical runs dump identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

/// Finite numbers as numbers, infinities as "+inf" / "-inf".
Json number_json(double v);
Json to_json(ExtReal v);
Json to_json(const Point& p);
Json to_json(const Window& w);
Json to_json(const SamplePlan& plan);
Json to_json(const Witness& w);
Json to_json(const Verdict& v);
Json to_json(const NotionId& n);
Json to_json(const WgmReport& r);
Json to_json(const EvpCertificate& c);
Json to_json(const DirDeriv& d);
Json to_json(const SubdiffApprox& s);
Json to_json(const ConeRep& c);
Json to_json(const FJCertificate& c);
Json to_json(const MultiplierSearch& m);
Json to_json(const CorpusRun& r);

/// Common report head: tool, version, schema version, command, input digest
/// and the sampling plan.
Json report_header(const std::string& command, const std::string& input_bytes, const SamplePlan& plan);

/// Two-space indented dump with a trailing newline.
std::string dump_report(const Json& report);

}  // namespace approxmin

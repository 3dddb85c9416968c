#pragma once

#include <string>

#include "bohr/verify.hpp"

namespace bohr {

inline constexpr const char* csv_banner = "# bohr-lab v1";

// All report output carries 12 significant digits.
std::string format12(double x);
// Rounds through the 12-digit decimal representation, for JSON payloads.
double round12(double x);

std::string radius_record_json(const RadiusQuery& query, const RootRecord& rec);
std::string radius_record_csv(const RadiusQuery& query, const RootRecord& rec);
std::string radius_record_text(const RadiusQuery& query, const RootRecord& rec);

std::string verification_rows_csv(const VerificationOutcome& outcome);
std::string verification_summary_json(const VerificationOutcome& outcome);

std::string witness_json(const SharpnessWitness& w);
std::string witness_csv(const SharpnessWitness& w);
std::string witness_text(const SharpnessWitness& w);

std::string slice_csv(const SliceCoefficients& c);
std::string slice_json(const SliceCoefficients& c);
std::string report_csv(const FunctionalReport& rep);
std::string report_json(const FunctionalReport& rep);

// Writes content to path via a temporary file and rename, so readers never
// observe a partial report.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace bohr

#pragma once

#include <string>

#include "core/markov.hpp"
#include "core/measures.hpp"

namespace tnp {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Analysis payloads as stable JSON text (sorted keys, shortest round-trip
/// floats). The CLI wraps these in a top-level envelope carrying tool
/// version, command, resolved config and the input digest.
std::string profile_report_json(const ProfileResult& res);
std::string markov_report_json(const MarkovResult& markov, const TtpResult& ttp, double gap);

/// FNV-1a 64 digest of a byte string, formatted as "fnv1a64:<hex>".
std::string content_digest(const std::string& bytes);

}  // namespace tnp

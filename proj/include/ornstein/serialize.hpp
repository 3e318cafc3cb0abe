#pragma once

#include <json.hpp>

#include "ornstein/certify.hpp"
#include "ornstein/hypothesis.hpp"

namespace ornstein {

/// Key order is fixed (insertion order), so dump() output is byte-stable.
using Json = nlohmann::ordered_json;

/// Integers that can exceed 64 bits and all rationals serialize as decimal
/// strings, never as floats.
Json to_json(const LatticeVector& q);
Json to_json(const HypothesisReport& rep);
Json to_json(const AdmissibleSequence& seq);
Json to_json(const ConditionReport& rep);
Json to_json(const SparseTrigPoly& p);
Json to_json(const NormEstimate& e);
Json to_json(const GrowthFit& fit);
Json to_json(const Certificate& cert);

LatticeVector lattice_vector_from_json(const Json& j);
AdmissibleSequence sequence_from_json(const Json& j);
SparseTrigPoly poly_from_json(const Json& j);
NormEstimate estimate_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);

/// Growth table: header m,norm,lower,upper,method.
std::string growth_table_csv(const GrowthFit& fit);

/// Ratio table: header n,khat,verdict.
std::string khat_table_csv(const std::vector<Certificate>& certs);

}  // namespace ornstein

// JSON forms of the lab's values and results.
#pragma once

#include <json.hpp>

#include "bergman/harness.hpp"
#include "bergman/lattice.hpp"
#include "bergman/norms.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

Json to_json(Complex c);
Complex complex_from_json(const Json& j);
Json to_json(const CVec& v);

/// [{exponents, re, im}, ...] in graded order.
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, std::size_t n);

/// {dimension, polynomial, closed: [{kind: power_kernel | log_kernel, ...}]}.
Json to_json(const HoloFunction& h);
HoloFunction holo_from_json(const Json& j);

Json to_json(const SpaceParams& s);
Json to_json(const PairParams& p);
Json to_json(const QuadratureSpec& s);
Json to_json(const NormResult& r);
Json to_json(const ScheduleResult& r);
Json to_json(const DecayProfile& d);
Json to_json(const SupResult& s);
Json to_json(const ProbeProfile& p);
Json to_json(const Verdict& v);
Json to_json(const ConsistencyReport& r);
Json to_json(const Lattice& lat);
Json to_json(const LatticeCert& c);

}  // namespace bergman

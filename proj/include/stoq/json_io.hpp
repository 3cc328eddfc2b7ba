// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file json_io.hpp
 * @brief JSON forms of Hamiltonians, circuits and module results.
 *
 * A Hamiltonian is {"n", "k", "terms": [{"support", "matrix_re", "matrix_im"?}]}
 * with row-major matrices; "matrix_im" is omitted when every imaginary part is +0. Readers also accept
 * the object nested under "hamiltonian" or "result.hamiltonian", so the output
 * of one command can feed the next.
 */

#pragma once

#include "stoq/amproto.hpp"
#include "stoq/clock.hpp"
#include "stoq/exact.hpp"
#include "stoq/gadget.hpp"
#include "stoq/walk.hpp"

#include "json.hpp"

#include <string>

namespace stoq {

using Json = nlohmann::ordered_json;

Json to_json(const LocalHamiltonian& h);
/** InputError on a malformed document. */
LocalHamiltonian hamiltonian_from_json(const Json& j);

Json to_json(const ReversibleCircuit& c);
ReversibleCircuit circuit_from_json(const Json& j);

Json to_json(const StoquasticReport& r);
Json to_json(const SpectralSummary& s, bool with_vector);
Json to_json(const WalkOutcome& o, bool with_samples);
Json to_json(const GadgetResult& r, bool with_hamiltonians);
Json to_json(const SelfEnergyReport& s);
Json to_json(const ProtocolResult& r, bool with_transcript);

Json vector_to_json(const Eigen::VectorXd& v);
Json matrix_to_json(const RMat& m);

/** Parse a file; InputError when it is missing or not JSON. */
Json read_json_file(const std::string& path);

}  // namespace stoq

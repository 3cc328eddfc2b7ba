// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Command-line entry point, callable in-process.
 *
 * Exit status: 0 on success, 2 on input, capacity and precondition errors or a
 * promise-violating decision, 1 on anything else.
 */

#pragma once

#include <ostream>

namespace stoq {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stoq

// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return stoq::run_cli(argc, argv, std::cout, std::cerr); }

// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "tunespace/cli.hpp"

int main(int argc, char** argv) { return tunespace::cli_main(argc, argv, std::cout, std::cerr); }

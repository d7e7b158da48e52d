// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "rmsv/cli/run.hpp"

int main(int argc, char** argv) { return rmsv::cli::main_entry(argc, argv, std::cout, std::cerr); }

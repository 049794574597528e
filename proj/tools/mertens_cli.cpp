// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#include "mertens/cli/run.hpp"

int main(int argc, char **argv) { return mertens::cli::run(std::vector<std::string>(argv + 1, argv + argc)); }

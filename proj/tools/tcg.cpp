// SPDX-License-Identifier: Apache-2.0
#include "tcg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tcg::run_cli(argc, argv, std::cout, std::cerr); }

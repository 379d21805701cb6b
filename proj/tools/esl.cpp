#include "esl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return esl::cli::run(argc, argv, std::cout, std::cerr); }

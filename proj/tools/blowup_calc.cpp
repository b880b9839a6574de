#include <blowup_calc/cli/dispatch.hpp>

int main(int argc, char** argv) { return blowup_calc::run_cli(argc, argv, std::cout, std::cerr); }

#include "commands.hpp"

int main(int argc, char** argv) { return deformae::cli::run(argc, argv); }

#include "commands.hpp"

int main(int argc, char** argv) {
  return pspin::cli::cli_main({argv + 1, argv + argc});
}

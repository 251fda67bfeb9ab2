#include <cstdio>

int main() {
  // placeholder; subcommands arrive with the report layer
  std::fprintf(stderr, "usage: precy <coformality|char2|dioperad> [flags]\n");
  return 3;
}

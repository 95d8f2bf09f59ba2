#include <cstdio>

int main() {
  std::puts("trop: placeholder");
  return 0;
}

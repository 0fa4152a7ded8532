#include <iostream>

int main() {
  std::cout << "nslab placeholder\n";
  return 0;
}

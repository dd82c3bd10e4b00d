#include "qgrid/numerics.hpp"
int main() { return 0; }

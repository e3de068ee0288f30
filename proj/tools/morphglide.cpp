#include <cstdio>
int main() { std::puts("morphglide"); return 0; }

#include <cstdio>
int main(){ std::puts("polyform placeholder"); return 1; }

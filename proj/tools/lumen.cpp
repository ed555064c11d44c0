// lumen - command line front end (stub while the library lands).

#include <cstdio>

int main() {
    std::puts("lumen: not wired up yet");
    return 0;
}

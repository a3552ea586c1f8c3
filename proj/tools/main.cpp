#include <cstdio>

int main() {
    std::puts("cbmdlab: placeholder");
    return 0;
}

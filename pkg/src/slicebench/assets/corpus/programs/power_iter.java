public class PowerIter {
    public static int main() {
        int base = 3;
        int exp = 4;
        int acc = 1;
        for (int k = 0; k < exp; k++) {
            acc = acc * base;
        }
        return acc;
    }
}

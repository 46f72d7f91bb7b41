public class NestedCountdown {
    public static int main() {
        int outer = 3;
        int steps = 0;
        while (outer > 0) {
            int inner = outer;
            while (inner > 0) {
                steps = steps + 1;
                inner = inner - 1;
            }
            outer = outer - 1;
        }
        return steps;
    }
}

public class BubblePass {
    public static int main() {
        int[] xs = {9, 4, 6, 2};
        int swaps = 0;
        for (int i = 0; i < 3; i++) {
            if (xs[i] > xs[i + 1]) {
                int tmp = xs[i];
                xs[i] = xs[i + 1];
                xs[i + 1] = tmp;
                swaps = swaps + 1;
            }
        }
        int last = xs[3];
        return last;
    }
}

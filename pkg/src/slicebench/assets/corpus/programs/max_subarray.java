public class MaxSubarray {
    public static int main() {
        int[] xs = {3, -5, 4, 2, -1};
        int best = xs[0];
        int cur = xs[0];
        for (int i = 1; i < 5; i++) {
            int x = xs[i];
            if (cur + x > x) {
                cur = cur + x;
            } else {
                cur = x;
            }
            if (cur > best) {
                best = cur;
            }
        }
        return best;
    }
}

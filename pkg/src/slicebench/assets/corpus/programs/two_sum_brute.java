public class TwoSumBrute {
    public static int main() {
        int[] xs = {2, 7, 11, 15};
        int target = 18;
        int found = -1;
        int checks = 0;
        for (int i = 0; i < 4; i++) {
            for (int j = i + 1; j < 4; j++) {
                int sum = xs[i] + xs[j];
                checks = checks + 1;
                if (sum == target) {
                    found = sum;
                }
            }
        }
        return found;
    }
}

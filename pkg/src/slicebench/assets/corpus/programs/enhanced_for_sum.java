public class EnhancedForSum {
    public static int main() {
        int[] values = {5, 10, 20};
        int pad = 1;
        int sum = 0;
        for (int v : values) {
            sum = sum + v;
        }
        int result = sum + pad;
        return result;
    }
}

public class FizzCount {
    public static int main() {
        int n = 12;
        int fizz = 0;
        int buzz = 0;
        for (int i = 1; i <= n; i++) {
            if (i % 3 == 0) {
                fizz = fizz + 1;
            }
            if (i % 5 == 0) {
                buzz = buzz + 1;
            }
        }
        return fizz;
    }
}

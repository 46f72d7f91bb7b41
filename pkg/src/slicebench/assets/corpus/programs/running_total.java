public class RunningTotal {
    public static int main() {
        int limit = 6;
        int total = 0;
        int i = 1;
        while (i <= limit) {
            total = total + i;
            i = i + 2;
        }
        return total;
    }
}

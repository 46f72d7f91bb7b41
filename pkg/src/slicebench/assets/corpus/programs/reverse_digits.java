public class ReverseDigits {
    public static int main() {
        int value = 4072;
        int reversed = 0;
        while (value > 0) {
            int digit = value % 10;
            reversed = reversed * 10 + digit;
            value = value / 10;
        }
        return reversed;
    }
}

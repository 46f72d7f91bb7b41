public class DoWhileDigits {
    public static int main() {
        int number = 905;
        int digits = 0;
        do {
            digits = digits + 1;
            number = number / 10;
        } while (number > 0);
        return digits;
    }
}

public class PalindromeCheck {
    public static int main() {
        String word = "level";
        int mismatches = 0;
        int n = word.length();
        for (int i = 0; i < n / 2; i++) {
            if (word.charAt(i) != word.charAt(n - 1 - i)) {
                mismatches = mismatches + 1;
            }
        }
        return mismatches;
    }
}

public class StringVowels {
    public static int main() {
        String text = "banana";
        String vowels = "aeiou";
        int count = 0;
        for (int i = 0; i < text.length(); i++) {
            String ch = text.substring(i, i + 1);
            if (vowels.contains(ch)) {
                count = count + 1;
            }
        }
        return count;
    }
}

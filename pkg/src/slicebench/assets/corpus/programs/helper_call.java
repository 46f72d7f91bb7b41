public class HelperCall {
    public static int main() {
        int base = 7;
        int bonus = 2;
        int doubled = twice(base);
        int result = doubled + bonus;
        return result;
    }
    public static int twice(int v) {
        int out = v * 2;
        return out;
    }
}

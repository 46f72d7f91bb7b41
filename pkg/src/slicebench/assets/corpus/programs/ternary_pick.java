public class TernaryPick {
    public static int main() {
        int a = 12;
        int b = 20;
        int flag = 1;
        int pick = flag > 0 ? a : b;
        int noise = a + b;
        return pick;
    }
}

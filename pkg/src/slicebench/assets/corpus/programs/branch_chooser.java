public class BranchChooser {
    public static int main() {
        int mode = 2;
        int a = 10;
        int b = 99;
        int out = 0;
        if (mode > 1) {
            out = a + 1;
        } else {
            out = b - 1;
        }
        return out;
    }
}

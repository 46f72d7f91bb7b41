public class MatrixDiagSum {
    public static int main() {
        int[] grid = {4, 1, 9, 2, 8, 7, 5, 3, 6};
        int n = 3;
        int diag = 0;
        for (int i = 0; i < n; i++) {
            diag = diag + grid[i * n + i];
        }
        return diag;
    }
}

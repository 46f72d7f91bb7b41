public class GridPaths {
    public static int main() {
        int rows = 3;
        int cols = 4;
        int[] dp = new int[12];
        for (int c = 0; c < cols; c++) {
            dp[c] = 1;
        }
        for (int r = 1; r < rows; r++) {
            dp[r * cols] = 1;
            for (int c = 1; c < cols; c++) {
                dp[r * cols + c] = dp[(r - 1) * cols + c] + dp[r * cols + c - 1];
            }
        }
        int answer = dp[rows * cols - 1];
        return answer;
    }
}

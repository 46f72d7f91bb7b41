public class BinarySearch {
    public static int main() {
        int[] xs = {1, 3, 5, 7, 9, 11};
        int want = 7;
        int lo = 0;
        int hi = 5;
        int found = -1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (xs[mid] == want) {
                found = mid;
                lo = hi + 1;
            } else if (xs[mid] < want) {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        return found;
    }
}

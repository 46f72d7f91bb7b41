public class QueueAccumulate {
    public static int main() {
        List<Integer> q = new LinkedList<>();
        q.add(4);
        q.add(9);
        int skipped = 0;
        int sum = 0;
        while (!q.isEmpty()) {
            int head = q.remove(0);
            sum = sum + head;
        }
        return sum;
    }
}

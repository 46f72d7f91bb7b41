public class ListOps {
    public static int main() {
        List<Integer> xs = new ArrayList<>();
        int unused = 50;
        xs.add(3);
        xs.add(8);
        xs.set(0, 9);
        int first = xs.get(0);
        int size = xs.size();
        int answer = first * size;
        return answer;
    }
}
